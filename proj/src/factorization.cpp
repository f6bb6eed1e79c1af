#include "mofa/factorization.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mofa {

namespace {

DualQuaternion from_vec(const Eigen::Ref<const Eigen::VectorXd>& v)
{
    std::array<double, 8> a{};
    for (int i = 0; i < 8; ++i) a[static_cast<std::size_t>(i)] = v(i);
    return DualQuaternion::from_array(a);
}

// Matrix of p -> a p on quaternion coordinates (w, x, y, z).
Eigen::Matrix4d left_matrix(const Quaternion& a)
{
    Eigen::Matrix4d m;
    const Quaternion basis[4] = {quat::one, quat::i, quat::j, quat::k};
    for (int c = 0; c < 4; ++c) {
        const auto v = (a * basis[c]).coords();
        for (int r = 0; r < 4; ++r) m(r, c) = v[static_cast<std::size_t>(r)];
    }
    return m;
}

Eigen::Vector4d coords4(const Quaternion& q)
{
    const auto c = q.coords();
    return {c[0], c[1], c[2], c[3]};
}

bool poly_less(const RealPoly& a, const RealPoly& b)
{
    return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(), b.coeffs().end());
}

void sort_quadratics(std::vector<RealPoly>& q) { std::sort(q.begin(), q.end(), poly_less); }

std::vector<RealPoly> distinct(const std::vector<RealPoly>& q)
{
    std::vector<RealPoly> out;
    for (const auto& m : q)
        if (std::none_of(out.begin(), out.end(), [&](const RealPoly& o) { return approx_equal(o, m, 1e-9); }))
            out.push_back(m);
    return out;
}

std::vector<RealPoly> remove_one(std::vector<RealPoly> q, const RealPoly& m)
{
    auto it = std::find_if(q.begin(), q.end(), [&](const RealPoly& o) { return approx_equal(o, m, 1e-9); });
    if (it != q.end()) q.erase(it);
    return q;
}

bool valid_generator(const DualQuaternion& h, bool rotation_only)
{
    try {
        const auto g = classify_generator(h, 1e-7 * std::max(1.0, h.max_abs()));
        return !rotation_only || is_rotation(g);
    } catch (const Error&) {
        return false;
    }
}

DQPoly quotient_by_linear(const DQPoly& d, const DualQuaternion& h, double* rem_size = nullptr)
{
    auto [q, r] = right_divide(d, DQPoly::linear(h), 0.0);
    if (rem_size) *rem_size = r.max_abs();
    return q;
}

double reconstruction_error(const Factorization& f, const DQPoly& target)
{
    return max_coeff_diff(f.product(), target);
}

}  // namespace

DQPoly Factorization::product() const
{
    DQPoly p{DualQuaternion(1.0)};
    for (const auto& h : factors) p = p * DQPoly::linear(h);
    return p;
}

std::string_view to_string(FactorStatus s)
{
    switch (s) {
    case FactorStatus::Success: return "Success";
    case FactorStatus::NoFactorization: return "NoFactorization";
    case FactorStatus::NeedsMultiplier: return "NeedsMultiplier";
    }
    return "Unknown";
}

bool same_factors(const Factorization& a, const Factorization& b, double tol)
{
    if (a.factors.size() != b.factors.size()) return false;
    for (std::size_t i = 0; i < a.factors.size(); ++i)
        if (max_abs_diff(a.factors[i], b.factors[i]) > tol) return false;
    return true;
}

DualQuaternion LinearSolutionSet::member(const std::vector<double>& lambda) const
{
    DualQuaternion x = basepoint;
    for (std::size_t i = 0; i < basis.size() && i < lambda.size(); ++i) x += basis[i] * lambda[i];
    if (family == FamilyKind::Affine) return x;
    // p = s + rho u with |u| = 1, q perpendicular to u with zero scalar part
    const double rho = std::sqrt(std::max(0.0, n - s * s));
    Vec3 u = x.primal.vec();
    u = u.norm() > 1e-300 ? Vec3(u.normalized()) : Vec3::UnitZ();
    Vec3 w = x.dual.vec();
    w -= w.dot(u) * u;
    return {Quaternion(s) + Quaternion::pure(rho * u), Quaternion::pure(w)};
}

DualQuaternion linear_zero(const DQPoly& r, double tol)
{
    if (r.degree() <= 0) throw Error(ErrorKind::ConstantRemainder, "remainder has degree <= 0");
    if (r.degree() > 1) throw Error(ErrorKind::ConstantRemainder, "remainder has degree > 1");
    const DualQuaternion& r1 = r.coeff(1);
    if (r1.primal.length() <= tol * std::max(1.0, r.max_abs()))
        throw Error(ErrorKind::NonInvertibleLeading, "leading coefficient of the remainder is not invertible");
    return -(r1.inverse() * r.coeff(0));
}

LinearSolutionSet solve_linear_factor(const DQPoly& c, const RealPoly& m_in, double tol)
{
    if (m_in.degree() != 2) throw Error(ErrorKind::OddDegree, "solve_linear_factor needs a quadratic");
    const RealPoly m = make_monic(m_in);
    LinearSolutionSet out;
    out.s = -0.5 * m.coeff(1);
    out.n = m.coeff(0);
    const double s = out.s, n = out.n;
    const double scale = std::max(1.0, c.max_abs());
    const DQPoly r = right_divide(c, to_dq(m), 0.0).rem.trimmed_below(tol * scale);

    if (r.is_zero()) {
        // every h with m(h) = 0 is a zero of c
        const double rho2 = n - s * s;
        if (rho2 <= tol * std::max(1.0, n)) {
            out.kind = SolutionKind::Family;
            out.family = FamilyKind::Affine;
            out.basepoint = DualQuaternion(s);
            out.basis = {DualQuaternion{{}, quat::i}, DualQuaternion{{}, quat::j}, DualQuaternion{{}, quat::k}};
            out.constraints = "h = s + eps q with q a vector quaternion";
        } else {
            out.kind = SolutionKind::Family;
            out.family = FamilyKind::Quadric;
            out.basepoint = {Quaternion(s) + quat::k * std::sqrt(rho2), {}};
            out.basis = {DualQuaternion(quat::i), DualQuaternion(quat::j), DualQuaternion(quat::k),
                         DualQuaternion{{}, quat::i}, DualQuaternion{{}, quat::j}, DualQuaternion{{}, quat::k}};
            out.constraints = "scal(p) = s, N(p) = n, scal(q) = 0, p.q = 0";
        }
        out.h = out.basepoint;
        return out;
    }

    const DualQuaternion r1 = r.coeff(1), r0 = r.coeff(0);
    const double rs = r.max_abs();
    Eigen::Matrix<double, 11, 8> A = Eigen::Matrix<double, 11, 8>::Zero();
    Eigen::Matrix<double, 11, 1> b = Eigen::Matrix<double, 11, 1>::Zero();
    A.block<4, 4>(0, 0) = left_matrix(r1.primal) / rs;
    A.block<4, 4>(4, 0) = left_matrix(r1.dual) / rs;
    A.block<4, 4>(4, 4) = left_matrix(r1.primal) / rs;
    b.segment<4>(0) = -coords4(r0.primal) / rs;
    b.segment<4>(4) = -coords4(r0.dual) / rs;
    A(8, 0) = 1.0;
    b(8) = s;
    A(9, 4) = 1.0;

    auto solve = [&](int rows, Eigen::VectorXd& x, Eigen::MatrixXd& null) {
        const Eigen::MatrixXd Ar = A.topRows(rows);
        const Eigen::VectorXd br = b.head(rows);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(Ar, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double cut = 1e-9 * std::max(1.0, sv(0));
        svd.setThreshold(cut / std::max(1.0, sv(0)));
        x = svd.solve(br);
        int rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > cut;
        null = svd.matrixV().rightCols(8 - rank);
        return (Ar * x - br).norm() <= 1e-7 * (1.0 + br.norm());
    };

    auto quadratic_ok = [&](const DualQuaternion& h) {
        const double sz = std::max(1.0, n);
        return std::abs(h.primal.norm() - n) <= 1e-6 * sz &&
               std::abs(dot(h.primal, h.dual)) <= 1e-6 * (1.0 + h.primal.length() * h.dual.length());
    };

    Eigen::VectorXd x;
    Eigen::MatrixXd null;
    if (!solve(10, x, null)) {
        out.constraints = "linear system inconsistent";
        return out;
    }
    if (null.cols() == 0) {
        const DualQuaternion h = from_vec(x);
        if (quadratic_ok(h)) {
            out.kind = SolutionKind::Unique;
            out.h = out.basepoint = h;
        } else {
            out.constraints = "unique linear solution violates the norm condition";
        }
        return out;
    }
    if (null.topRows(4).norm() > 1e-7) {
        out.constraints = "primal part undetermined";
        return out;
    }
    const Quaternion p0 = from_vec(x).primal;
    if (std::abs(p0.norm() - n) > 1e-6 * std::max(1.0, n)) {
        out.constraints = "fixed primal part has the wrong norm";
        return out;
    }
    // the Study condition is linear once the primal part is fixed
    A.block<1, 4>(10, 4) = coords4(p0).transpose() / std::max(1.0, p0.length());
    if (!solve(11, x, null)) {
        out.constraints = "Study condition inconsistent";
        return out;
    }
    const DualQuaternion h = from_vec(x);
    if (null.cols() == 0) {
        out.kind = SolutionKind::Unique;
        out.h = out.basepoint = h;
        return out;
    }
    out.kind = SolutionKind::Family;
    out.family = FamilyKind::Affine;
    out.h = out.basepoint = h;
    for (Eigen::Index k = 0; k < null.cols(); ++k) out.basis.push_back(from_vec(null.col(k)));
    std::ostringstream os;
    os << "primal part fixed; dual part in a " << null.cols() << "-dimensional affine space";
    out.constraints = os.str();
    return out;
}

Factorization factor_generic(const MotionPolynomial& c, const std::vector<RealPoly>& order, double tol)
{
    if (!c.is_monic(1e-9)) throw Error(ErrorKind::NotMonic, "factor_generic needs a monic polynomial");
    DQPoly d = c.poly();
    const double scale = std::max(1.0, d.max_abs());
    std::vector<DualQuaternion> rev;
    for (const auto& m : order) {
        const DQPoly r = right_divide(d, to_dq(make_monic(m)), 0.0).rem.trimmed_below(tol * scale);
        DualQuaternion h;
        try {
            h = linear_zero(r, tol);
        } catch (const Error& e) {
            throw Error(ErrorKind::ExceptionalCase, std::string(e.what()));
        }
        d = quotient_by_linear(d, h);
        rev.push_back(h);
    }
    Factorization f;
    f.factors.assign(rev.rbegin(), rev.rend());
    return f;
}

std::vector<Factorization> all_factorizations(const MotionPolynomial& c, double tol)
{
    auto order = quadratic_factors(c.norm()).factors;
    sort_quadratics(order);
    std::vector<Factorization> out;
    do {
        Factorization f = factor_generic(c, order, tol);
        if (std::none_of(out.begin(), out.end(), [&](const Factorization& g) { return same_factors(f, g); }))
            out.push_back(std::move(f));
    } while (std::next_permutation(order.begin(), order.end(), poly_less));
    return out;
}

namespace {

class Search {
public:
    Search(const DQPoly& target, const FactorOptions& opt) : target_(target), opt_(opt) {}

    void run(const std::vector<RealPoly>& quadratics) { dfs(target_, quadratics, {}); }

    std::vector<Factorization> results;
    std::vector<std::string> diagnostics;
    bool budget_hit = false;
    int nodes = 0;

private:
    bool done() const
    {
        return budget_hit || static_cast<int>(results.size()) >= opt_.max_solutions ||
               (opt_.stop_at_first && !results.empty());
    }

    void dfs(const DQPoly& d, const std::vector<RealPoly>& remaining, std::vector<DualQuaternion> rev)
    {
        if (remaining.empty()) {
            Factorization f;
            f.factors.assign(rev.rbegin(), rev.rend());
            if (reconstruction_error(f, target_) > opt_.tol * (1.0 + target_.max_abs())) return;
            if (std::none_of(results.begin(), results.end(), [&](const Factorization& g) { return same_factors(f, g); }))
                results.push_back(std::move(f));
            return;
        }
        if (++nodes > opt_.node_budget) {
            budget_hit = true;
            return;
        }
        for (const auto& m : distinct(remaining)) {
            const auto next = remove_one(remaining, m);
            const LinearSolutionSet sol = solve_linear_factor(d, m, opt_.tol);
            for (const auto& h : candidates(d, sol, next)) {
                if (!valid_generator(h, opt_.rotation_only)) continue;
                double rem = 0.0;
                const DQPoly q = quotient_by_linear(d, h, &rem);
                if (rem > 1e-6 * (1.0 + d.max_abs())) continue;
                auto r2 = rev;
                r2.push_back(h);
                dfs(q, next, std::move(r2));
                if (done()) return;
            }
        }
    }

    std::vector<DualQuaternion> candidates(const DQPoly& d, const LinearSolutionSet& sol, const std::vector<RealPoly>& next)
    {
        std::vector<DualQuaternion> out;
        auto add = [&](const DualQuaternion& h) {
            if (std::none_of(out.begin(), out.end(), [&](const DualQuaternion& g) { return max_abs_diff(g, h) < 1e-9; }))
                out.push_back(h);
        };
        if (sol.kind == SolutionKind::Empty) return out;
        add(sol.h);
        if (sol.kind == SolutionKind::Unique) return out;
        if (next.size() >= 2)
            for (const auto& m2 : distinct(next))
                for (const auto& h : lookahead(d, sol, m2)) add(h);
        const int dim = sol.dimension();
        for (int k = 0; k < opt_.family_samples && dim > 0; ++k) {
            std::vector<double> lambda(static_cast<std::size_t>(dim), 0.0);
            lambda[static_cast<std::size_t>(k % dim)] = 1.0 + 0.5 * (k / dim);
            add(sol.member(lambda));
        }
        return out;
    }

    // Family parameters for which the next level's linear factor problem becomes solvable.
    std::vector<DualQuaternion> lookahead(const DQPoly& d, const LinearSolutionSet& sol, const RealPoly& m2)
    {
        const double s2 = -0.5 * m2.coeff(1), n2 = m2.coeff(0);
        const int dim = sol.dimension();
        const double scale = std::max(1.0, d.max_abs());
        auto remainder = [&](const Eigen::VectorXd& lam) {
            const DualQuaternion h = sol.member({lam.data(), lam.data() + lam.size()});
            const DQPoly q = quotient_by_linear(d, h);
            return right_divide(q, to_dq(m2), 0.0).rem;
        };
        // conditions for a fixed-primal solution: r1, r0 have zero primal parts, p = -b1^-1 b0 fits m2
        auto residual_fixed = [&](const Eigen::VectorXd& lam) {
            const DQPoly r = remainder(lam);
            const DualQuaternion r1 = r.coeff(1), r0 = r.coeff(0);
            Eigen::VectorXd v(10);
            v.segment<4>(0) = coords4(r1.primal);
            v.segment<4>(4) = coords4(r0.primal);
            v(8) = (-(r1.dual.conj() * r0.dual).w - s2 * r1.dual.norm()) / scale;
            v(9) = (r0.dual.norm() - n2 * r1.dual.norm()) / scale;
            return v;
        };
        // conditions for the unique zero -r1^-1 r0 to satisfy m2
        auto residual_unique = [&](const Eigen::VectorXd& lam) {
            const DQPoly r = remainder(lam);
            const DualQuaternion r1 = r.coeff(1), r0 = r.coeff(0);
            Eigen::VectorXd v(4);
            if (r1.primal.length() < 1e-12 * scale) {
                v.setConstant(1e6);
                return v;
            }
            const DualQuaternion h = -(r1.inverse() * r0);
            v << h.dual.w, dot(h.primal, h.dual), h.primal.w - s2, h.primal.norm() - n2;
            return v;
        };
        std::vector<DualQuaternion> out;
        for (int variant = 0; variant < 2; ++variant) {
            auto f = [&](const Eigen::VectorXd& lam) {
                return variant == 0 ? residual_fixed(lam) : residual_unique(lam);
            };
            Eigen::VectorXd lam = Eigen::VectorXd::Zero(dim);
            Eigen::VectorXd res = f(lam);
            for (int it = 0; it < 60 && res.norm() > 1e-13; ++it) {
                ++nodes;
                Eigen::MatrixXd J(res.size(), dim);
                for (int j = 0; j < dim; ++j) {
                    const double step = 1e-7 * (1.0 + std::abs(lam(j)));
                    Eigen::VectorXd lp = lam;
                    lp(j) += step;
                    J.col(j) = (f(lp) - res) / step;
                }
                const Eigen::VectorXd delta = J.completeOrthogonalDecomposition().solve(-res);
                double alpha = 1.0;
                bool improved = false;
                for (int ls = 0; ls < 20; ++ls, alpha *= 0.5) {
                    const Eigen::VectorXd trial = lam + alpha * delta;
                    const Eigen::VectorXd tr = f(trial);
                    if (tr.norm() < res.norm()) {
                        lam = trial;
                        res = tr;
                        improved = true;
                        break;
                    }
                }
                if (!improved) break;
            }
            if (res.norm() <= 1e-10) out.push_back(sol.member({lam.data(), lam.data() + lam.size()}));
        }
        return out;
    }

    DQPoly target_;
    FactorOptions opt_;
};

FactorizationReport make_report(Search& search, std::vector<std::string> diagnostics)
{
    FactorizationReport rep;
    rep.factorizations = std::move(search.results);
    rep.diagnostics = std::move(diagnostics);
    rep.diagnostics.push_back("search nodes: " + std::to_string(search.nodes));
    if (!rep.factorizations.empty()) {
        rep.status = FactorStatus::Success;
    } else if (search.budget_hit) {
        rep.status = FactorStatus::NeedsMultiplier;
        rep.diagnostics.push_back("node budget exhausted");
    } else {
        rep.status = FactorStatus::NoFactorization;
        rep.diagnostics.push_back("search tree exhausted without a factorization");
    }
    return rep;
}

void require_monic(const DQPoly& c)
{
    if (c.is_zero() || max_abs_diff(c.leading(), DualQuaternion(1.0)) > 1e-9)
        throw Error(ErrorKind::NotMonic, "factorization needs a monic motion polynomial");
}

std::vector<std::string> condition_notes(const QuadraticFactorization& q)
{
    if (!q.ill_conditioned) return {};
    return {"warning: norm polynomial has nearly coincident roots; quadratic factors are ill-conditioned"};
}

}  // namespace

FactorizationReport factor_with_quadratics(const DQPoly& c, std::vector<RealPoly> quadratics, const FactorOptions& opt)
{
    require_monic(c);
    sort_quadratics(quadratics);
    Search search(c, opt);
    search.run(quadratics);
    return make_report(search, {});
}

FactorizationReport factor_with_backtracking(const MotionPolynomial& c, const FactorOptions& opt)
{
    require_monic(c.poly());
    const auto q = quadratic_factors(c.norm());
    auto quadratics = q.factors;
    sort_quadratics(quadratics);
    Search search(c.poly(), opt);
    search.run(quadratics);
    return make_report(search, condition_notes(q));
}

bool is_bounded(const MotionPolynomial& c)
{
    for (const auto& z : real_roots_complex(c.norm()))
        if (std::abs(z.imag()) <= 1e-6 * std::max(1.0, std::abs(z))) return false;
    return true;
}

FactorizationReport factor_bounded_with_multiplier(const MotionPolynomial& c, int max_deg, const FactorOptions& opt)
{
    require_monic(c.poly());
    if (!is_bounded(c)) throw Error(ErrorKind::Unbounded, "norm polynomial has real roots");
    const RealPoly g = max_real_factor(c.poly(), 1e-8);
    if (max_deg < 0) max_deg = std::max(0, g.degree());

    if (g.degree() <= 0) {
        FactorizationReport rep;
        rep.factorizations = all_factorizations(c, opt.tol);
        rep.status = rep.factorizations.empty() ? FactorStatus::NoFactorization : FactorStatus::Success;
        rep.diagnostics.push_back("primal part has no real factor; multiplier 1");
        return rep;
    }

    // candidate multipliers: 1, products of sub-multisets of the quadratic factors of g, then their squares
    const auto gf = quadratic_factors(g).factors;
    std::vector<RealPoly> candidates{RealPoly{1.0}};
    std::vector<std::vector<RealPoly>> parts{{}};
    const std::size_t nf = gf.size();
    for (std::size_t size = 1; size <= nf; ++size) {
        std::vector<bool> pick(nf, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
        do {
            std::vector<RealPoly> part;
            for (std::size_t i = 0; i < nf; ++i)
                if (pick[i]) part.push_back(gf[i]);
            parts.push_back(part);
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    std::vector<std::vector<RealPoly>> cand_parts{{}};
    auto push = [&](const std::vector<RealPoly>& part) {
        RealPoly r{1.0};
        for (const auto& f : part) r = r * f;
        if (r.degree() > 2 * max_deg) return;
        for (const auto& e : candidates)
            if (approx_equal(e, r, 1e-9)) return;
        candidates.push_back(r);
        cand_parts.push_back(part);
    };
    for (const auto& part : parts)
        if (!part.empty() && static_cast<int>(2 * part.size()) <= max_deg) push(part);
    for (const auto& part : parts) {
        if (part.empty()) continue;
        auto sq = part;
        sq.insert(sq.end(), part.begin(), part.end());
        push(sq);
    }

    FactorOptions o = opt;
    o.rotation_only = true;
    o.stop_at_first = true;
    const auto base = quadratic_factors(c.norm()).factors;
    FactorizationReport rep;
    bool any_budget = false;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const RealPoly& R = candidates[k];
        auto quads = base;
        for (const auto& f : cand_parts[k]) {
            quads.push_back(f);
            quads.push_back(f);
        }
        const auto sub = factor_with_quadratics(c.poly() * to_dq(R), quads, o);
        rep.diagnostics.push_back("multiplier " + to_string(R) + ": " + std::string(to_string(sub.status)));
        if (sub.status == FactorStatus::Success) {
            rep.status = FactorStatus::Success;
            rep.factorizations = sub.factorizations;
            for (auto& f : rep.factorizations) f.multiplier = R;
            return rep;
        }
        any_budget = any_budget || sub.status == FactorStatus::NeedsMultiplier;
    }
    rep.status = FactorStatus::NeedsMultiplier;
    rep.diagnostics.push_back(any_budget ? "node budget exhausted for some candidates" : "no candidate multiplier succeeded");
    return rep;
}

Factorization factor_quaternion(const QuatPoly& p_in, double tol)
{
    if (p_in.is_zero() || (p_in.leading() - Quaternion(1.0)).max_abs() > 1e-9)
        throw Error(ErrorKind::NotMonic, "factor_quaternion needs a monic polynomial");
    auto quads = quadratic_factors(norm_poly(p_in)).factors;
    sort_quadratics(quads);
    QuatPoly p = p_in;
    const double scale = std::max(1.0, p.max_abs());
    std::vector<DualQuaternion> rev;
    for (const auto& m : quads) {
        const double s = -0.5 * m.coeff(1), n = m.coeff(0);
        const QuatPoly r = right_divide(p, to_quat(m), 0.0).rem.trimmed_below(tol * scale);
        Quaternion h;
        if (r.degree() == 1 && r.coeff(1).length() > tol * scale) {
            h = -(r.coeff(1).inverse() * r.coeff(0));
        } else {
            // m = (t - u)(t - conj(u)) with u = s + sqrt(n - s^2) k; the right factor is conj(u)
            h = Quaternion(s) - quat::k * std::sqrt(std::max(0.0, n - s * s));
        }
        p = right_divide(p, QuatPoly::linear(h), 0.0).quot;
        rev.push_back(h);
    }
    Factorization f;
    f.factors.assign(rev.rbegin(), rev.rend());
    return f;
}

FactorizationReport right_multiply_and_factor(const MotionPolynomial& c, const QuatPoly& h_poly, const FactorOptions& opt)
{
    require_monic(c.poly());
    if (h_poly.is_zero() || (h_poly.leading() - Quaternion(1.0)).max_abs() > 1e-9)
        throw Error(ErrorKind::NotMonic, "right multiplier must be monic");
    auto quads = quadratic_factors(c.norm()).factors;
    if (h_poly.degree() > 0)
        for (const auto& f : quadratic_factors(norm_poly(h_poly)).factors) quads.push_back(f);
    auto rep = factor_with_quadratics(c.poly() * make_dq(h_poly), quads, opt);
    rep.diagnostics.push_back("factors reconstruct C*H; points fixed by H keep their trajectories");
    return rep;
}

}  // namespace mofa
