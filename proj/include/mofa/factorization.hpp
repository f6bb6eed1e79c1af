#pragma once

#include "mofa/dual_quaternion.hpp"
#include "mofa/polynomial.hpp"

#include <string>
#include <vector>

namespace mofa {

/// C * multiplier = (t - factors[0]) ... (t - factors[n-1]).
struct Factorization {
    std::vector<DualQuaternion> factors;
    RealPoly multiplier{1.0};

    DQPoly product() const;
};

enum class SolutionKind { Unique, Family, Empty };

/// Which constraints a family member still has to satisfy beyond its affine span.
enum class FamilyKind {
    Affine,   // every point of the affine span is a solution
    Quadric,  // members also need N(p) = n and p.q = 0 (projected exactly)
};

/// Solutions h of m(h) = 0 and right_eval(c, h) = 0.
struct LinearSolutionSet {
    SolutionKind kind = SolutionKind::Empty;
    DualQuaternion h;  // Unique: the solution; Family: the canonical member
    DualQuaternion basepoint;
    std::vector<DualQuaternion> basis;
    FamilyKind family = FamilyKind::Affine;
    std::string constraints;
    double s = 0.0, n = 0.0;  // m = t^2 - 2 s t + n

    /// Family member at parameters lambda (size == basis.size()), projected onto the constraints.
    DualQuaternion member(const std::vector<double>& lambda) const;
    int dimension() const { return static_cast<int>(basis.size()); }
};

enum class FactorStatus { Success, NoFactorization, NeedsMultiplier };

std::string_view to_string(FactorStatus s);

struct FactorizationReport {
    FactorStatus status = FactorStatus::NoFactorization;
    std::vector<Factorization> factorizations;
    std::vector<std::string> diagnostics;
};

struct FactorOptions {
    double tol = 1e-8;
    int node_budget = 10000;
    int family_samples = 3;
    bool rotation_only = false;
    bool stop_at_first = false;
    int max_solutions = 64;
};

/// Zero -r1^-1 r0 of r = r1 t + r0. Throws ConstantRemainder or NonInvertibleLeading.
DualQuaternion linear_zero(const DQPoly& r, double tol = kDefaultTolerance);

/// One pass of the generic algorithm; order[0] yields the rightmost factor.
Factorization factor_generic(const MotionPolynomial& c, const std::vector<RealPoly>& order, double tol = 1e-8);

/// Factorizations over all distinct orderings of the norm's quadratic factors, deduplicated.
std::vector<Factorization> all_factorizations(const MotionPolynomial& c, double tol = 1e-8);

LinearSolutionSet solve_linear_factor(const DQPoly& c, const RealPoly& m, double tol = 1e-8);

FactorizationReport factor_with_backtracking(const MotionPolynomial& c, const FactorOptions& opt = {});

/// Backtracking search with an explicit multiset of monic quadratics whose product is N(c).
FactorizationReport factor_with_quadratics(const DQPoly& c, std::vector<RealPoly> quadratics, const FactorOptions& opt = {});

bool is_bounded(const MotionPolynomial& c);

/// Searches real multipliers R with rotation-only factorizations of c R; max_deg < 0 selects the default bound.
FactorizationReport factor_bounded_with_multiplier(const MotionPolynomial& c, int max_deg = -1, const FactorOptions& opt = {});

/// Linear quaternion factors of a monic quaternion polynomial.
Factorization factor_quaternion(const QuatPoly& p, double tol = 1e-8);

/// Factors c * h_poly; the fixed points of h_poly keep their trajectories under the new motion.
FactorizationReport right_multiply_and_factor(const MotionPolynomial& c, const QuatPoly& h_poly, const FactorOptions& opt = {});

/// Factor lists equal componentwise within tol.
bool same_factors(const Factorization& a, const Factorization& b, double tol = 1e-7);

}  // namespace mofa
