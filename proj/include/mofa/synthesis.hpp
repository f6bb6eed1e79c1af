#pragma once

#include "mofa/factorization.hpp"
#include "mofa/linkage.hpp"

#include <array>
#include <optional>

namespace mofa {

/// Polar form of the Study quadric: Q(a, a) is the Study defect of a.
struct StudyBilinearForm {
    double operator()(const DualQuaternion& a, const DualQuaternion& b) const
    {
        return dot(a.primal, b.dual) + dot(a.dual, b.primal);
    }
};

/// Conic on the Study quadric through three poses at t = 0, 1 and infinity.
struct ThreePoseCurve {
    DQPoly curve;             // curve(0) ~ p0, curve(1) ~ p1, leading coefficient ~ p2
    MotionPolynomial monic;   // curve * lead^-1
    DualQuaternion frame;     // lead(curve); monic(t) * frame ~ curve(t)
};

/// Throws DegeneratePoses.
ThreePoseCurve interpolate_three_poses(const Pose& p0, const Pose& p1, const Pose& p2, double tol = 1e-9);

struct BennettLinkage {
    std::pair<DualQuaternion, DualQuaternion> fixed_axes;   // (h1, k1)
    std::pair<DualQuaternion, DualQuaternion> moving_axes;  // (h2, k2)
    MotionPolynomial coupler_motion;
    DualQuaternion frame;  // coupler_motion(t) * frame passes through the input poses
};

/// Throws DegeneratePoses or NonGenericConic.
BennettLinkage synthesize_bennett(const Pose& p0, const Pose& p1, const Pose& p2, double tol = 1e-9);

/// Four-bar loop h1 h2 = k1 k2; ground holds h1, k1, the coupler holds h2, k2.
Linkage bennett_linkage(const BennettLinkage& b);

struct FlipResult {
    DualQuaternion k;
    DualQuaternion m;
};

/// (t - m_prev)(t - h) = (t - k)(t - m). Throws DegenerateFlip when the norms coincide.
FlipResult bennett_flip(const DualQuaternion& m_prev, const DualQuaternion& h, double tol = 1e-9);

using CurveNumerator = std::array<RealPoly, 3>;

/// C = w - eps v / 2, moving every point x along x + v / w. Throws UnboundedCurve.
MotionPolynomial translation_motion_from_curve(const CurveNumerator& v, const RealPoly& w);

/// Rotation about the third coordinate axis with norm t^2 - 2t + 2.
inline DualQuaternion default_m0() { return {Quaternion(1.0) + quat::k, {}}; }

struct KempeResult {
    Linkage linkage;
    Factorization factorization;  // of C R, C the monic curvilinear translation
    std::vector<FlipResult> flips;
};

/// Revolute linkage whose tracer point draws the bounded rational curve v / w (up to a translation).
KempeResult kempe_linkage_for_curve(const CurveNumerator& v, const RealPoly& w, const DualQuaternion& m0 = default_m0(),
                                    const FactorOptions& opt = {});

/// 6R loop from two factorizations of a generic cubic. Throws InsufficientFactorizations.
Linkage six_bar_from_cubic(const MotionPolynomial& c, double tol = 1e-8);

}  // namespace mofa
