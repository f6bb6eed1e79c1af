#include "mofa/synthesis.hpp"

#include "mofa/error.hpp"

#include <Eigen/Dense>

#include <sstream>

namespace mofa {

namespace {

std::vector<Joint> named(const std::string& prefix, const std::vector<DualQuaternion>& hs)
{
    std::vector<Joint> out;
    for (std::size_t i = 0; i < hs.size(); ++i) out.push_back({prefix + std::to_string(i + 1), hs[i]});
    return out;
}

const Link* link_with(const Linkage& l, std::initializer_list<const char*> ids)
{
    for (const auto& lk : l.graph.links) {
        bool all = true;
        for (const char* id : ids) all = all && std::find(lk.joint_ids.begin(), lk.joint_ids.end(), id) != lk.joint_ids.end();
        if (all) return &lk;
    }
    return nullptr;
}

RealPoly norm_quadratic(const DualQuaternion& h) { return norm_poly(DQPoly::linear(h)).re; }

}  // namespace

ThreePoseCurve interpolate_three_poses(const Pose& p0, const Pose& p1, const Pose& p2, double tol)
{
    const StudyBilinearForm Q;
    const DualQuaternion &a = p0.rep, &b = p1.rep, &c = p2.rep;
    const double q01 = Q(a, b), q02 = Q(a, c), q12 = Q(b, c);
    auto small = [&](double q, const DualQuaternion& x, const DualQuaternion& y) {
        return std::abs(q) <= tol * std::max(1.0, x.max_abs() * y.max_abs());
    };
    Eigen::Matrix<double, 8, 3> span;
    for (int k = 0; k < 3; ++k) {
        const auto arr = (k == 0 ? a : k == 1 ? b : c).to_array();
        for (int r = 0; r < 8; ++r) span(r, k) = arr[static_cast<std::size_t>(r)];
        span.col(k).normalize();
    }
    const auto sv = span.jacobiSvd().singularValues();
    if (sv(2) <= 1e-7 * sv(0)) throw Error(ErrorKind::DegeneratePoses, "poses do not span a plane");
    const int vanishing = small(q01, a, b) + small(q02, a, c) + small(q12, b, c);
    double w0 = q12, w1 = q02, w2 = q01;
    if (vanishing == 3) {
        // the whole plane lies on the quadric (e.g. planar poses): every conic through the poses is admissible
        w0 = w1 = w2 = 1.0;
    } else if (vanishing > 0) {
        throw Error(ErrorKind::DegeneratePoses, "poses are not in general position (a Study polar value vanishes)");
    }
    // w0 (1 - t) p0 + w1 t p1 + w2 t (t - 1) p2
    const DQPoly curve{a * w0, b * w1 - a * w0 - c * w2, c * w2};
    if (curve.leading().primal.length() <= tol)
        throw Error(ErrorKind::DegeneratePoses, "leading coefficient is not invertible");
    const DualQuaternion frame = curve.leading();
    DQPoly m = curve.times_right(frame.inverse());
    std::vector<DualQuaternion> v = m.coeffs();
    v.back() = DualQuaternion(1.0);
    try {
        return {curve, validate_motion(DQPoly(std::move(v)), 1e-8), frame};
    } catch (const Error& e) {
        throw Error(ErrorKind::DegeneratePoses, e.what());
    }
}

BennettLinkage synthesize_bennett(const Pose& p0, const Pose& p1, const Pose& p2, double tol)
{
    const auto curve = interpolate_three_poses(p0, p1, p2, tol);
    const auto& c = curve.monic;
    if (max_real_factor(c.poly(), 1e-8).degree() > 0)
        throw Error(ErrorKind::NonGenericConic, "primal part of the interpolating conic has a real factor");
    const auto fs = all_factorizations(c);
    if (fs.size() < 2) throw Error(ErrorKind::NonGenericConic, "interpolating conic has a single factorization");
    return {{fs[0].factors[0], fs[1].factors[0]}, {fs[0].factors[1], fs[1].factors[1]}, c, curve.frame};
}

Linkage bennett_linkage(const BennettLinkage& b)
{
    Linkage l = assemble({{named("h", {b.fixed_axes.first, b.moving_axes.first}),
                           named("k", {b.fixed_axes.second, b.moving_axes.second})}});
    l.notes.push_back("Bennett loop: ground holds h1, k1; coupler holds h2, k2");
    return l;
}

FlipResult bennett_flip(const DualQuaternion& m_prev, const DualQuaternion& h, double tol)
{
    const RealPoly nm = norm_quadratic(m_prev), nh = norm_quadratic(h);
    if (approx_equal(nm, nh, std::max(tol, 1e-9)))
        throw Error(ErrorKind::DegenerateFlip, "norm polynomials of the two factors coincide");
    const DQPoly c = DQPoly::linear(m_prev) * DQPoly::linear(h);
    Factorization f;
    try {
        f = factor_generic(validate_motion(c), {make_monic(nm), make_monic(nh)});
    } catch (const Error& e) {
        throw Error(ErrorKind::DegenerateFlip, e.what());
    }
    return {f.factors[0], f.factors[1]};
}

MotionPolynomial translation_motion_from_curve(const CurveNumerator& v, const RealPoly& w)
{
    if (w.is_zero()) throw Error(ErrorKind::UnboundedCurve, "zero denominator");
    for (const auto& p : v)
        if (p.degree() > w.degree()) throw Error(ErrorKind::UnboundedCurve, "numerator degree exceeds denominator degree");
    if (w.degree() > 0)
        for (const auto& z : real_roots_complex(w))
            if (std::abs(z.imag()) <= 1e-8 * std::max(1.0, std::abs(z)))
                throw Error(ErrorKind::UnboundedCurve, "denominator has a real root");
    const QuatPoly dual = from_components({RealPoly{}, v[0] * -0.5, v[1] * -0.5, v[2] * -0.5});
    return validate_motion(make_dq(to_quat(w), dual));
}

KempeResult kempe_linkage_for_curve(const CurveNumerator& v, const RealPoly& w, const DualQuaternion& m0, const FactorOptions& opt)
{
    const MotionPolynomial c = make_monic(translation_motion_from_curve(v, w));
    const auto rep = factor_bounded_with_multiplier(c, -1, opt);
    if (rep.status != FactorStatus::Success) {
        std::string d;
        for (const auto& s : rep.diagnostics) d += s + "; ";
        throw Error(ErrorKind::NoFactorization, "no rotation factorization of the curvilinear translation: " + d);
    }
    KempeResult out;
    out.factorization = rep.factorizations.front();
    const auto& hs = out.factorization.factors;
    const std::size_t n = hs.size();

    std::vector<DualQuaternion> ms{m0};
    for (std::size_t i = 0; i < n; ++i) {
        out.flips.push_back(bennett_flip(ms.back(), hs[i]));
        ms.push_back(out.flips.back().m);
    }
    std::vector<LoopSpec> loops;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string a = std::to_string(i), b = std::to_string(i + 1);
        loops.push_back({{{"m" + a, ms[i]}, {"h" + b, hs[i]}}, {{"k" + b, out.flips[i].k}, {"m" + b, ms[i + 1]}}});
    }
    out.linkage = assemble(loops);
    Linkage& l = out.linkage;
    const Link* ground = link_with(l, {"h1", "m0"});
    const std::string hn = "h" + std::to_string(n), mn = "m" + std::to_string(n);
    const Link* tracer = nullptr;
    for (const auto& lk : l.graph.links)
        if (l.graph.edge(hn).second == lk.id && l.graph.edge(mn).second == lk.id) tracer = &lk;
    if (!ground || !tracer) throw Error(ErrorKind::InvalidLinkGraph, "unexpected cell structure");
    l.ground = ground->id;
    l.tracer = Tracer{tracer->id, std::get<RotationAxis>(l.graph.joint(hn).kind()).point()};

    std::ostringstream os;
    os << n << " quadrilateral cells, " << l.graph.joints.size() << " joints, " << l.graph.links.size()
       << " links; multiplier " << to_string(out.factorization.multiplier);
    l.notes.push_back(os.str());
    l.notes.push_back("tracer point is the anchor of " + hn + " on the link joining " + hn + " and " + mn);
    return out;
}

Linkage six_bar_from_cubic(const MotionPolynomial& c, double tol)
{
    if (c.degree() != 3) throw Error(ErrorKind::InsufficientFactorizations, "six-bar loops need a cubic");
    const auto fs = all_factorizations(c, tol);
    if (fs.size() < 2) throw Error(ErrorKind::InsufficientFactorizations, "only one factorization");
    auto disjoint = [](const Factorization& a, const Factorization& b) {
        for (const auto& x : a.factors)
            for (const auto& y : b.factors)
                if (max_abs_diff(x, y) < 1e-7) return false;
        return true;
    };
    std::size_t ia = 0, ib = 1;
    bool found = false;
    for (std::size_t i = 0; i < fs.size() && !found; ++i)
        for (std::size_t j = i + 1; j < fs.size() && !found; ++j)
            if (disjoint(fs[i], fs[j])) {
                ia = i;
                ib = j;
                found = true;
            }
    Linkage l = assemble({{named("h", fs[ia].factors), named("k", fs[ib].factors)}});

    // concurrent axes make the loop spherical
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    std::vector<RotationAxis> axes;
    for (const auto& j : l.graph.joints)
        if (is_rotation(j.kind())) axes.push_back(std::get<RotationAxis>(j.kind()));
    for (const auto& ax : axes) {
        const Eigen::Matrix3d P = Eigen::Matrix3d::Identity() - ax.direction * ax.direction.transpose();
        A += P;
        rhs += P * ax.point();
    }
    if (axes.size() == l.graph.joints.size() && std::abs(A.determinant()) > 1e-12) {
        const Vec3 x = A.ldlt().solve(rhs);
        double worst = 0.0;
        for (const auto& ax : axes) worst = std::max(worst, line_distance(x, ax.direction, ax.point(), ax.direction));
        if (worst < 1e-8) l.notes.push_back("all axes pass through a common point: spherical loop");
    }
    if (!found) l.notes.push_back("no pair of factorizations without shared joints; using the first two");
    return l;
}

}  // namespace mofa
