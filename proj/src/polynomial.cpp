#include "mofa/polynomial.hpp"

#include <sstream>

namespace mofa {

QuatPoly primal(const DQPoly& c)
{
    std::vector<Quaternion> v;
    for (const auto& h : c.coeffs()) v.push_back(h.primal);
    return QuatPoly(std::move(v));
}

QuatPoly dual(const DQPoly& c)
{
    std::vector<Quaternion> v;
    for (const auto& h : c.coeffs()) v.push_back(h.dual);
    return QuatPoly(std::move(v));
}

DQPoly make_dq(const QuatPoly& p, const QuatPoly& q)
{
    const std::size_t n = std::max(p.coeffs().size(), q.coeffs().size());
    std::vector<DualQuaternion> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int d = static_cast<int>(i);
        v[i] = {p.coeff(d), q.coeff(d)};
    }
    return DQPoly(std::move(v));
}

QuatPoly to_quat(const RealPoly& r)
{
    std::vector<Quaternion> v;
    for (double c : r.coeffs()) v.emplace_back(c);
    return QuatPoly(std::move(v));
}

DQPoly to_dq(const RealPoly& r) { return make_dq(to_quat(r)); }

RealPoly component(const QuatPoly& p, int index)
{
    std::vector<double> v;
    for (const auto& q : p.coeffs()) v.push_back(q.coords()[static_cast<std::size_t>(index)]);
    return RealPoly(std::move(v));
}

std::array<RealPoly, 4> components(const QuatPoly& p)
{
    return {component(p, 0), component(p, 1), component(p, 2), component(p, 3)};
}

QuatPoly from_components(const std::array<RealPoly, 4>& c)
{
    int deg = kZeroPolyDegree;
    for (const auto& r : c) deg = std::max(deg, r.degree());
    if (deg == kZeroPolyDegree) return {};
    std::vector<Quaternion> v(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i <= deg; ++i) v[static_cast<std::size_t>(i)] = {c[0].coeff(i), c[1].coeff(i), c[2].coeff(i), c[3].coeff(i)};
    return QuatPoly(std::move(v));
}

RealPoly derivative(const RealPoly& p)
{
    if (p.degree() <= 0) return {};
    std::vector<double> v;
    for (std::size_t i = 1; i < p.coeffs().size(); ++i) v.push_back(static_cast<double>(i) * p.coeffs()[i]);
    return RealPoly(std::move(v));
}

RealPoly make_monic(const RealPoly& p) { return p * (1.0 / p.leading()); }

RealPoly real_gcd(const RealPoly& a_in, const RealPoly& b_in, double tol)
{
    if (a_in.is_zero()) return b_in.is_zero() ? RealPoly{} : make_monic(b_in);
    if (b_in.is_zero()) return make_monic(a_in);
    RealPoly a = a_in * (1.0 / a_in.max_abs());
    RealPoly b = b_in * (1.0 / b_in.max_abs());
    if (b.degree() > a.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        if (b.degree() == 0) return RealPoly{1.0};
        RealPoly r = right_divide(a, b, 0.0).rem.trimmed_below(tol * a.max_abs());
        a = b;
        b = r.is_zero() ? r : r * (1.0 / r.max_abs());
    }
    return make_monic(a);
}

bool divides(const RealPoly& d, const RealPoly& p, double tol)
{
    if (p.is_zero()) return true;
    const auto [quot, rem] = right_divide(p, make_monic(d), 0.0);
    return rem.max_abs() <= tol * std::max(p.max_abs(), quot.max_abs());
}

std::complex<double> eval_complex(const RealPoly& p, std::complex<double> z)
{
    std::complex<double> acc = 0.0;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * z + *it;
    return acc;
}

NormPoly norm_poly(const DQPoly& c, double /*tol*/)
{
    // Vector parts of c conj(c) vanish identically since the product is self-conjugate.
    const DQPoly n = c * c.conj();
    std::vector<double> re, du;
    for (const auto& h : n.coeffs()) {
        re.push_back(h.primal.w);
        du.push_back(h.dual.w);
    }
    return {RealPoly(std::move(re)), RealPoly(std::move(du))};
}

RealPoly norm_poly(const QuatPoly& p)
{
    RealPoly n;
    for (const auto& c : components(p)) n += c * c;
    return n;
}

bool MotionPolynomial::is_monic(double tol) const
{
    return max_abs_diff(poly_.leading(), DualQuaternion(1.0)) <= tol;
}

MotionPolynomial validate_motion(const DQPoly& c, double tol)
{
    if (c.is_zero()) throw Error(ErrorKind::ZeroNorm, "zero polynomial");
    NormPoly n = norm_poly(c, tol);
    const double scale = std::max(1.0, n.re.max_abs());
    RealPoly re = n.re.trimmed_below(tol * scale);
    if (re.is_zero()) throw Error(ErrorKind::ZeroNorm, "norm polynomial vanishes");
    if (n.du.max_abs() > tol * scale)
        throw Error(ErrorKind::NonRealNorm, "dual part of the norm polynomial is " + to_string(n.du));
    const auto& lead = c.leading();
    if (lead.primal.length() <= tol * std::max(1.0, lead.max_abs()))
        throw Error(ErrorKind::NonInvertibleLeading, "leading coefficient has zero primal part");
    return MotionPolynomial(c, std::move(re));
}

MotionPolynomial make_monic(const MotionPolynomial& c, double tol)
{
    const DQPoly m = c.poly().times_right(c.poly().leading().inverse());
    std::vector<DualQuaternion> v = m.coeffs();
    v.back() = DualQuaternion(1.0);
    return validate_motion(DQPoly(std::move(v)), tol);
}

RealPoly max_real_factor(const QuatPoly& p, double tol)
{
    if (p.is_zero()) throw Error(ErrorKind::DivisionByZero, "max_real_factor of the zero polynomial");
    const double cut = tol * p.max_abs();
    RealPoly g;
    for (const auto& c : components(p)) {
        RealPoly r = c.trimmed_below(cut);
        if (r.is_zero()) continue;
        g = g.is_zero() ? make_monic(r) : real_gcd(g, r, tol);
        if (g.degree() == 0) break;
    }
    return g;
}

bool approx_equal(const RealPoly& a, const RealPoly& b, double tol)
{
    const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
    return max_coeff_diff(a, b) <= tol * scale;
}

std::string to_string(const RealPoly& p)
{
    if (p.is_zero()) return "0";
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const double c = p.coeff(i);
        if (c == 0.0) continue;
        const double a = std::abs(c);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << '-';
        if (a != 1.0 || i == 0) os << a;
        if (i > 0) os << (a != 1.0 ? "*t" : "t");
        if (i > 1) os << '^' << i;
        first = false;
    }
    return os.str();
}

}  // namespace mofa
