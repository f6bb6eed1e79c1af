#pragma once

// Univariate polynomials in a central variable t with real, quaternion or
// dual-quaternion coefficients. Coefficients are stored in ascending degree.
// All divisions are right divisions: c = quot * d + rem.

#include "mofa/dual_quaternion.hpp"
#include "mofa/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

namespace mofa {

/// Degree of the zero polynomial.
inline constexpr int kZeroPolyDegree = std::numeric_limits<int>::min();

namespace coeff {
inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Quaternion& q) { return q.max_abs(); }
inline double magnitude(const DualQuaternion& h) { return h.max_abs(); }

inline double conj(double v) { return v; }
inline Quaternion conj(const Quaternion& q) { return q.conj(); }
inline DualQuaternion conj(const DualQuaternion& h) { return h.conj(); }

/// Size of the part that has to be non-zero for invertibility.
inline double invertible_part(double v) { return std::abs(v); }
inline double invertible_part(const Quaternion& q) { return q.max_abs(); }
inline double invertible_part(const DualQuaternion& h) { return h.primal.max_abs(); }

inline double inverse(double v) { return 1.0 / v; }
inline Quaternion inverse(const Quaternion& q) { return q.inverse(); }
inline DualQuaternion inverse(const DualQuaternion& h) { return h.inverse(); }

template <class T>
T one()
{
    return T(1.0);
}
}  // namespace coeff

template <class T>
class Polynomial {
public:
    using coeff_type = T;

    Polynomial() = default;
    Polynomial(std::initializer_list<T> c) : c_(c) { trim_exact(); }
    explicit Polynomial(std::vector<T> c) : c_(std::move(c)) { trim_exact(); }

    static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }
    static Polynomial monomial(const T& c, int degree)
    {
        std::vector<T> v(static_cast<std::size_t>(degree) + 1, T{});
        v.back() = c;
        return Polynomial(std::move(v));
    }
    /// The monic linear polynomial t - h.
    static Polynomial linear(const T& h) { return Polynomial(std::vector<T>{-h, coeff::one<T>()}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? kZeroPolyDegree : static_cast<int>(c_.size()) - 1; }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : T{}; }
    const T& leading() const
    {
        if (c_.empty()) throw Error(ErrorKind::DivisionByZero, "leading coefficient of zero polynomial");
        return c_.back();
    }

    double max_abs() const
    {
        double m = 0.0;
        for (const auto& c : c_) m = std::max(m, coeff::magnitude(c));
        return m;
    }

    /// Drops trailing coefficients of magnitude <= tol * max(1, max_abs()).
    Polynomial trimmed(double tol) const
    {
        const double cut = tol * std::max(1.0, max_abs());
        std::vector<T> v = c_;
        while (!v.empty() && coeff::magnitude(v.back()) <= cut) v.pop_back();
        return Polynomial(std::move(v));
    }

    /// Drops trailing coefficients of magnitude <= cut.
    Polynomial trimmed_below(double cut) const
    {
        std::vector<T> v = c_;
        while (!v.empty() && coeff::magnitude(v.back()) <= cut) v.pop_back();
        return Polynomial(std::move(v));
    }

    Polynomial conj() const
    {
        std::vector<T> v;
        v.reserve(c_.size());
        for (const auto& c : c_) v.push_back(coeff::conj(c));
        return Polynomial(std::move(v));
    }

    /// Value at a real parameter; at +-infinity the projective limit, i.e. the leading coefficient.
    T eval(double t0) const
    {
        if (c_.empty()) return T{};
        if (std::isinf(t0)) return c_.back();
        T acc = c_.back();
        for (int i = static_cast<int>(c_.size()) - 2; i >= 0; --i) acc = acc * t0 + c_[static_cast<std::size_t>(i)];
        return acc;
    }

    /// Right evaluation sum c_i h^i (coefficients on the left).
    T right_eval(const T& h) const
    {
        if (c_.empty()) return T{};
        T acc = c_.back();
        for (int i = static_cast<int>(c_.size()) - 2; i >= 0; --i) acc = acc * h + c_[static_cast<std::size_t>(i)];
        return acc;
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T{});
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim_exact();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T{});
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim_exact();
        return *this;
    }
    Polynomial operator-() const
    {
        Polynomial r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    Polynomial& operator*=(double s)
    {
        for (auto& c : c_) c *= s;
        trim_exact();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }

    /// Product respecting the order of coefficient multiplication.
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> v(a.c_.size() + b.c_.size() - 1, T{});
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(v));
    }

    /// Multiplication by a constant from the right / from the left.
    Polynomial times_right(const T& k) const
    {
        std::vector<T> v;
        v.reserve(c_.size());
        for (const auto& c : c_) v.push_back(c * k);
        return Polynomial(std::move(v));
    }
    Polynomial times_left(const T& k) const
    {
        std::vector<T> v;
        v.reserve(c_.size());
        for (const auto& c : c_) v.push_back(k * c);
        return Polynomial(std::move(v));
    }

    bool operator==(const Polynomial&) const = default;

private:
    void trim_exact()
    {
        while (!c_.empty() && coeff::magnitude(c_.back()) == 0.0) c_.pop_back();
    }

    std::vector<T> c_;
};

using RealPoly = Polynomial<double>;
using QuatPoly = Polynomial<Quaternion>;
using DQPoly = Polynomial<DualQuaternion>;

/// Max coefficient magnitude of a - b.
template <class T>
double max_coeff_diff(const Polynomial<T>& a, const Polynomial<T>& b)
{
    return (a - b).max_abs();
}

template <class T>
struct DivisionResult {
    Polynomial<T> quot;
    Polynomial<T> rem;
};

/// c = quot * d + rem with deg rem < deg d. The leading coefficient of d must be invertible.
template <class T>
DivisionResult<T> right_divide(const Polynomial<T>& c, const Polynomial<T>& d, double tol = kDefaultTolerance)
{
    if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "right division by the zero polynomial");
    if (coeff::invertible_part(d.leading()) <= tol * std::max(1.0, coeff::magnitude(d.leading())))
        throw Error(ErrorKind::NonInvertibleDivisorLeading, "leading coefficient of divisor is not invertible");
    const T lead_inv = coeff::inverse(d.leading());
    const int dd = d.degree();
    std::vector<T> rem = c.coeffs();
    std::vector<T> quot(rem.size() >= d.coeffs().size() ? rem.size() - d.coeffs().size() + 1 : 0, T{});
    for (int k = static_cast<int>(rem.size()) - 1; k >= dd; --k) {
        const T f = rem[static_cast<std::size_t>(k)] * lead_inv;
        quot[static_cast<std::size_t>(k - dd)] = f;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= f * d.coeffs()[static_cast<std::size_t>(j)];
        rem[static_cast<std::size_t>(k)] = T{};
    }
    return {Polynomial<T>(std::move(quot)), Polynomial<T>(std::move(rem))};
}

// ---- conversions ----------------------------------------------------------

QuatPoly primal(const DQPoly& c);
QuatPoly dual(const DQPoly& c);
DQPoly make_dq(const QuatPoly& primal, const QuatPoly& dual = {});
DQPoly to_dq(const RealPoly& r);
QuatPoly to_quat(const RealPoly& r);
/// Real polynomial of the coefficient index 0..3 (1, i, j, k).
RealPoly component(const QuatPoly& p, int index);
std::array<RealPoly, 4> components(const QuatPoly& p);
QuatPoly from_components(const std::array<RealPoly, 4>& c);

// ---- real polynomial helpers ----------------------------------------------

RealPoly derivative(const RealPoly& p);
RealPoly make_monic(const RealPoly& p);
/// Monic greatest common divisor by the Euclidean algorithm; remainders below tol (relative) count as zero.
RealPoly real_gcd(const RealPoly& a, const RealPoly& b, double tol = 1e-8);
/// Exact-division test: remainder relative to the dividend scale is below tol.
bool divides(const RealPoly& d, const RealPoly& p, double tol = 1e-8);
std::complex<double> eval_complex(const RealPoly& p, std::complex<double> z);

// ---- motion polynomials -----------------------------------------------------

struct NormPoly {
    RealPoly re;
    RealPoly du;
};

/// Real and dual scalar parts of c conj(c).
NormPoly norm_poly(const DQPoly& c, double tol = kDefaultTolerance);
RealPoly norm_poly(const QuatPoly& p);

/// Polynomial over DH with non-zero real norm and invertible leading coefficient.
class MotionPolynomial {
public:
    const DQPoly& poly() const { return poly_; }
    const RealPoly& norm() const { return norm_; }
    int degree() const { return poly_.degree(); }
    bool is_monic(double tol = kDefaultTolerance) const;

    friend MotionPolynomial validate_motion(const DQPoly& c, double tol);

private:
    MotionPolynomial(DQPoly p, RealPoly n) : poly_(std::move(p)), norm_(std::move(n)) {}
    DQPoly poly_;
    RealPoly norm_;
};

/// Throws NonRealNorm, NonInvertibleLeading or ZeroNorm.
MotionPolynomial validate_motion(const DQPoly& c, double tol = kDefaultTolerance);

/// c * lead(c)^-1, which parametrizes the same motion up to a fixed moving-frame change.
MotionPolynomial make_monic(const MotionPolynomial& c, double tol = kDefaultTolerance);

inline DualQuaternion eval_at(const DQPoly& c, double t0) { return c.eval(t0); }
inline DualQuaternion right_eval(const DQPoly& c, const DualQuaternion& h) { return c.right_eval(h); }

/// Maximal monic real polynomial dividing the quaternion polynomial p (gcd of its components).
RealPoly max_real_factor(const QuatPoly& p, double tol = 1e-8);
inline RealPoly max_real_factor(const DQPoly& c, double tol = 1e-8) { return max_real_factor(primal(c), tol); }

// ---- roots and quadratic factors ------------------------------------------

/// All complex roots with multiplicity; clustered multiple roots are refined to a common value.
std::vector<std::complex<double>> real_roots_complex(const RealPoly& n);

struct QuadraticFactorization {
    std::vector<RealPoly> factors;  // monic, degree 2, sorted
    bool ill_conditioned = false;   // distinct roots closer than 1e-4
};

/// Factorization of a monic non-negative real polynomial into monic non-negative quadratics.
/// Throws OddDegree or NotNonnegative.
QuadraticFactorization quadratic_factors(const RealPoly& n);

/// Coefficient equality of real polynomials within a relative tolerance.
bool approx_equal(const RealPoly& a, const RealPoly& b, double tol = 1e-7);

std::string to_string(const RealPoly& p);

}  // namespace mofa
