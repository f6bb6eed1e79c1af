#pragma once

#include "mofa/factorization.hpp"
#include "mofa/synthesis.hpp"

#include <string>
#include <vector>

namespace mofa::io {

// Readers throw Error(ParseError) on malformed text or wrong shapes.

DualQuaternion read_dual_quaternion(const std::string& text);  // [pw,px,py,pz,qw,qx,qy,qz]
std::string write_dual_quaternion(const DualQuaternion& h);

DQPoly read_dq_poly(const std::string& text);  // {"coeffs": [[8 numbers], ...]}
std::string write_dq_poly(const DQPoly& c);

RealPoly read_real_poly(const std::string& text);  // {"coeffs": [numbers]}
std::string write_real_poly(const RealPoly& p);

QuatPoly read_quat_poly(const std::string& text);  // {"coeffs": [[4 numbers], ...]}

/// A JSON array of 8-tuples, or {"poses": [...]}.
std::vector<DualQuaternion> read_poses(const std::string& text);

struct FlipInput {
    DualQuaternion m_prev;
    DualQuaternion h;
};
FlipInput read_flip_input(const std::string& text);  // {"m_prev": [8], "h": [8]}
std::string write_flip(const FlipResult& f);

struct CurveInput {
    CurveNumerator numerator;
    RealPoly denominator;
};
/// {"numerator": [{"coeffs": ...} x3], "denominator": {"coeffs": ...}}
CurveInput read_curve(const std::string& text);

std::string write_report(const FactorizationReport& r);
FactorizationReport read_report(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace mofa::io
