#include "mofa/polynomial.hpp"

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

#include <numeric>

namespace mofa {

namespace {

using Complex = std::complex<double>;

// Relative size of p(z) compared to the sum of the absolute values of its terms.
double relative_residual(const RealPoly& p, Complex z)
{
    double scale = 0.0;
    double r = 1.0;
    for (double c : p.coeffs()) {
        scale += std::abs(c) * r;
        r *= std::abs(z);
    }
    return scale == 0.0 ? 0.0 : std::abs(eval_complex(p, z)) / scale;
}

Complex newton_polish(const RealPoly& p, const RealPoly& dp, Complex z, int iterations = 8)
{
    double best = std::abs(eval_complex(p, z));
    for (int it = 0; it < iterations && best > 0.0; ++it) {
        const Complex d = eval_complex(dp, z);
        if (d == Complex(0.0)) break;
        const Complex next = z - eval_complex(p, z) / d;
        const double v = std::abs(eval_complex(p, next));
        if (!(v < best)) break;
        best = v;
        z = next;
    }
    return z;
}

struct Cluster {
    std::vector<std::size_t> members;
    Complex center;
};

// Accepts `members` as one multiple root if the refined center annihilates p and its first m-1 derivatives.
bool validate_cluster(const std::vector<RealPoly>& derivs, const std::vector<Complex>& roots, Cluster& cl)
{
    const std::size_t m = cl.members.size();
    Complex mean = 0.0;
    for (auto i : cl.members) mean += roots[i];
    mean /= static_cast<double>(m);
    if (m == 1) {
        cl.center = roots[cl.members.front()];
        return true;
    }
    if (m >= derivs.size()) return false;
    cl.center = newton_polish(derivs[m - 1], derivs[m], mean, 20);
    for (std::size_t j = 0; j < m; ++j)
        if (relative_residual(derivs[j], cl.center) > 1e-9) return false;
    return true;
}

void split_clusters(const std::vector<RealPoly>& derivs, const std::vector<Complex>& roots, std::vector<std::size_t> idx,
                    double radius, std::vector<Cluster>& out)
{
    // single linkage clustering at the given relative radius
    std::vector<std::size_t> parent(idx.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const Complex za = roots[idx[a]], zb = roots[idx[b]];
            if (std::abs(za - zb) <= radius * std::max({1.0, std::abs(za), std::abs(zb)})) parent[find(a)] = find(b);
        }
    std::vector<std::vector<std::size_t>> groups(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) groups[find(a)].push_back(idx[a]);
    for (auto& g : groups) {
        if (g.empty()) continue;
        Cluster cl{g, {}};
        if (validate_cluster(derivs, roots, cl)) {
            out.push_back(cl);
        } else if (radius > 1e-7) {
            split_clusters(derivs, roots, g, radius * 0.1, out);
        } else {
            for (auto i : g) out.push_back({{i}, roots[i]});
        }
    }
}

std::vector<Cluster> clustered_roots(const RealPoly& p, std::vector<Complex>& raw)
{
    const int n = p.degree();
    Eigen::VectorXd coeffs(n + 1);
    for (int i = 0; i <= n; ++i) coeffs(i) = p.coeff(i);
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
    const auto& r = solver.roots();
    const RealPoly dp = derivative(p);
    raw.clear();
    for (Eigen::Index i = 0; i < r.size(); ++i) raw.push_back(newton_polish(p, dp, r(i)));

    std::vector<RealPoly> derivs{p};
    for (int i = 0; i < n; ++i) derivs.push_back(derivative(derivs.back()));
    std::vector<std::size_t> idx(raw.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Cluster> clusters;
    split_clusters(derivs, raw, idx, 1e-2, clusters);
    return clusters;
}

}  // namespace

std::vector<std::complex<double>> real_roots_complex(const RealPoly& n)
{
    if (n.is_zero()) throw Error(ErrorKind::DivisionByZero, "roots of the zero polynomial");
    if (n.degree() == 0) return {};
    std::vector<Complex> raw;
    std::vector<Complex> out;
    for (const auto& cl : clustered_roots(n, raw))
        for (std::size_t i = 0; i < cl.members.size(); ++i) out.push_back(cl.center);
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

QuadraticFactorization quadratic_factors(const RealPoly& n_in)
{
    if (n_in.is_zero()) throw Error(ErrorKind::NotNonnegative, "zero polynomial");
    if (n_in.degree() % 2 != 0) throw Error(ErrorKind::OddDegree, "degree " + std::to_string(n_in.degree()));
    if (n_in.leading() < 0) throw Error(ErrorKind::NotNonnegative, "negative leading coefficient");
    const RealPoly n = make_monic(n_in);
    QuadraticFactorization result;
    if (n.degree() == 0) return result;

    std::vector<Complex> raw;
    const auto clusters = clustered_roots(n, raw);

    for (std::size_t a = 0; a < clusters.size(); ++a) {
        const auto& ca = clusters[a];
        if (ca.members.size() > 1) {
            double spread = 0.0;
            for (auto i : ca.members) spread = std::max(spread, std::abs(raw[i] - ca.center));
            if (spread > 1e-4 * std::max(1.0, std::abs(ca.center))) result.ill_conditioned = true;
        }
        for (std::size_t b = a + 1; b < clusters.size(); ++b) {
            const double d = std::abs(ca.center - clusters[b].center);
            const double im_gap = std::abs(ca.center.imag()) + std::abs(clusters[b].center.imag());
            // conjugate partners of a real-ish root do not count as near-multiple
            if (d < 1e-4 * std::max(1.0, std::abs(ca.center)) && im_gap > 1e-6) result.ill_conditioned = true;
        }
    }

    std::vector<std::pair<Complex, std::size_t>> upper, lower, real;
    for (const auto& cl : clusters) {
        const Complex z = cl.center;
        const double im_tol = 1e-6 * std::max(1.0, std::abs(z));
        if (z.imag() > im_tol) upper.emplace_back(z, cl.members.size());
        else if (z.imag() < -im_tol) lower.emplace_back(z, cl.members.size());
        else real.emplace_back(Complex(z.real(), 0.0), cl.members.size());
    }

    // real roots of a non-negative polynomial come with even multiplicity
    std::sort(real.begin(), real.end(), [](auto& a, auto& b) { return a.first.real() < b.first.real(); });
    for (std::size_t i = 0; i < real.size();) {
        std::size_t mult = 0;
        const double r = real[i].first.real();
        std::size_t j = i;
        for (; j < real.size() && std::abs(real[j].first.real() - r) <= 1e-6 * std::max(1.0, std::abs(r)); ++j)
            mult += real[j].second;
        if (mult % 2 != 0) throw Error(ErrorKind::NotNonnegative, "real root of odd multiplicity");
        for (std::size_t k = 0; k < mult / 2; ++k) result.factors.push_back(RealPoly{r * r, -2.0 * r, 1.0});
        i = j;
    }

    // pair each upper root with its nearest conjugate
    std::vector<bool> used(lower.size(), false);
    for (const auto& [z, mult] : upper) {
        std::size_t best = lower.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < lower.size(); ++k) {
            if (used[k]) continue;
            const double d = std::abs(std::conj(lower[k].first) - z);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        if (best == lower.size() || lower[best].second != mult || best_d > 1e-6 * std::max(1.0, std::abs(z)))
            throw Error(ErrorKind::NotNonnegative, "unpaired complex root");
        used[best] = true;
        const Complex zz = 0.5 * (z + std::conj(lower[best].first));
        for (std::size_t k = 0; k < mult; ++k) result.factors.push_back(RealPoly{std::norm(zz), -2.0 * zz.real(), 1.0});
    }
    if (std::count(used.begin(), used.end(), false) != 0) throw Error(ErrorKind::NotNonnegative, "unpaired complex root");

    std::sort(result.factors.begin(), result.factors.end(), [](const RealPoly& a, const RealPoly& b) {
        return a.coeff(1) != b.coeff(1) ? a.coeff(1) < b.coeff(1) : a.coeff(0) < b.coeff(0);
    });
    return result;
}

}  // namespace mofa
