#include "doctest.h"
#include "test_support.hpp"

#include "mofa/error.hpp"
#include "mofa/factorization.hpp"

using namespace mofa;
using namespace mofa::testing;

namespace {

const DualQuaternion I = quat::i, J = quat::j, K = quat::k, ONE(1.0);
DualQuaternion eps(const Quaternion& q) { return {{}, q}; }

DQPoly ellipse(double a, double b)
{
    return DQPoly{ONE + eps(quat::i * a), eps(quat::j * b), ONE};
}

DQPoly translation_example()
{
    // (t - 1)(t - j) - eps((i + k) t - 2 k)
    return DQPoly::linear(ONE) * DQPoly::linear(J) - DQPoly{eps(quat::k * -2.0), eps(quat::i + quat::k)};
}

bool contains(const std::vector<Factorization>& fs, const std::vector<DualQuaternion>& hs, double tol)
{
    Factorization f;
    f.factors = hs;
    return std::any_of(fs.begin(), fs.end(), [&](const Factorization& g) { return same_factors(f, g, tol); });
}

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("linear_zero")
{
    CHECK(max_abs_diff(linear_zero(DQPoly{I * -2.0, ONE * 2.0}), I) < 1e-15);
    CHECK(kind_of([] { linear_zero(DQPoly{eps(quat::i)}); }) == ErrorKind::ConstantRemainder);
    CHECK(kind_of([] { linear_zero(DQPoly{eps(quat::i), eps(quat::j)}); }) == ErrorKind::NonInvertibleLeading);
    // the remainder of the circular translation modulo t^2 + 1
    const auto r = right_divide(ellipse(1, 1), DQPoly{ONE, {}, ONE}).rem;
    CHECK(r == DQPoly{eps(quat::i), eps(quat::j)});
}

TEST_CASE("factor_generic")
{
    const RealPoly q{1.0, 0.0, 1.0};
    const auto c = validate_motion(DQPoly::linear(I) * DQPoly::linear(J));
    auto f = factor_generic(c, {q});
    REQUIRE(f.factors.size() == 1);  // a single pass pulls one factor per listed quadratic
    f = factor_generic(c, {q, q});
    REQUIRE(f.factors.size() == 2);
    CHECK(max_abs_diff(f.factors[0], I) < 1e-12);
    CHECK(max_abs_diff(f.factors[1], J) < 1e-12);

    const auto c2 = validate_motion(DQPoly::linear(I) * DQPoly::linear(I));
    f = factor_generic(c2, {q, q});
    CHECK(max_abs_diff(f.factors[0], I) < 1e-12);
    CHECK(max_abs_diff(f.factors[1], I) < 1e-12);

    CHECK(kind_of([&] { factor_generic(validate_motion(ellipse(1, 1)), {q, q}); }) == ErrorKind::ExceptionalCase);
    CHECK(kind_of([] { factor_generic(validate_motion(DQPoly{I, ONE * 2.0}), {}); }) == ErrorKind::NotMonic);

    Rng rng(21);
    for (int n = 0; n < 50; ++n) {
        const auto hs = random_rotation_chain(rng, 2);
        const auto cc = validate_motion(product_of_linear(hs));
        const auto qs = quadratic_factors(cc.norm()).factors;
        const auto g = factor_generic(cc, qs);
        CHECK(coefficient_residual(g.product(), cc.poly()) < 1e-10);
        for (const auto& h : g.factors) CHECK(is_rotation(classify_generator(h)));
    }
}

TEST_CASE("all_factorizations")
{
    SUBCASE("(t - i)(t - j) has a single ordering")
    {
        const auto fs = all_factorizations(validate_motion(DQPoly::linear(I) * DQPoly::linear(J)));
        CHECK(fs.size() == 1);  // both norm factors equal t^2 + 1, so a single ordering exists
        CHECK(contains(fs, {I, J}, 1e-12));
    }
    SUBCASE("repeated factor")
    {
        const auto fs = all_factorizations(validate_motion(DQPoly::linear(I) * DQPoly::linear(I)));
        REQUIRE(fs.size() == 1);
        CHECK(contains(fs, {I, I}, 1e-12));
    }
    SUBCASE("random quadratics and cubics")
    {
        Rng rng(22);
        for (int deg : {2, 3}) {
            for (int n = 0; n < 30; ++n) {
                const auto hs = random_rotation_chain(rng, deg);
                const auto c = validate_motion(product_of_linear(hs));
                const auto fs = all_factorizations(c);
                CHECK(fs.size() == (deg == 2 ? 2u : 6u));
                CHECK(contains(fs, hs, 1e-7));
                for (const auto& f : fs) CHECK(coefficient_residual(f.product(), c.poly()) < 1e-10);
            }
        }
    }
}

TEST_CASE("solve_linear_factor")
{
    const RealPoly q{1.0, 0.0, 1.0};
    SUBCASE("unique")
    {
        const auto s = solve_linear_factor(DQPoly::linear(I) * DQPoly::linear(J), q);
        REQUIRE(s.kind == SolutionKind::Unique);
        CHECK(max_abs_diff(s.h, J) < 1e-12);
    }
    SUBCASE("ellipse has no linear right factor")
    {
        CHECK(solve_linear_factor(ellipse(2, 1), q).kind == SolutionKind::Empty);
    }
    SUBCASE("circle gives the two-parameter family")
    {
        const auto s = solve_linear_factor(ellipse(1, 1), q);
        REQUIRE(s.kind == SolutionKind::Family);
        CHECK(s.dimension() == 2);
        CHECK(max_abs_diff(s.h, -K) < 1e-12);
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b) {
                const double f = -1.0 + 0.5 * a, g = -1.0 + 0.5 * b;
                const DualQuaternion h2 = -K + eps(quat::i * f + quat::j * g);
                // express h2 in family coordinates and compare
                Eigen::MatrixXd B(8, 2);
                for (int k = 0; k < 2; ++k)
                    for (int r = 0; r < 8; ++r) B(r, k) = s.basis[static_cast<std::size_t>(k)].to_array()[static_cast<std::size_t>(r)];
                Eigen::VectorXd d(8);
                for (int r = 0; r < 8; ++r) d(r) = (h2 - s.basepoint).to_array()[static_cast<std::size_t>(r)];
                const Eigen::VectorXd lam = B.colPivHouseholderQr().solve(d);
                CHECK(max_abs_diff(s.member({lam(0), lam(1)}), h2) < 1e-12);
            }
    }
    SUBCASE("zero remainder gives the canonical split")
    {
        const auto s = solve_linear_factor(to_dq(q * q), q);
        REQUIRE(s.kind == SolutionKind::Family);
        CHECK(s.family == FamilyKind::Quadric);
        CHECK(max_abs_diff(s.h, K) < 1e-15);
        const auto h = s.member({0.3, -0.2, 0.1, 0.5, 0.4, -0.7});
        CHECK(std::abs(dq_norm(h).re - 1.0) < 1e-12);
        CHECK(std::abs(study_defect(h)) < 1e-12);
    }
}

TEST_CASE("factor_with_backtracking: translation factors")
{
    const auto c = validate_motion(translation_example());
    const auto rep = factor_with_backtracking(c);
    REQUIRE(rep.status == FactorStatus::Success);
    CHECK(rep.factorizations.size() == 2);
    // t - 1 - eps i means h = 1 + eps i
    const std::vector<DualQuaternion> p1{ONE + eps(quat::i), J + eps(quat::k)};
    const std::vector<DualQuaternion> p2{J + eps(quat::i + quat::k * 2.0), ONE - eps(quat::k)};
    CHECK(contains(rep.factorizations, p1, 1e-10));
    CHECK(contains(rep.factorizations, p2, 1e-10));
}

TEST_CASE("factor_with_backtracking: circle and ellipse")
{
    auto rep = factor_with_backtracking(validate_motion(ellipse(2, 1)));
    CHECK(rep.status == FactorStatus::NoFactorization);

    rep = factor_with_backtracking(validate_motion(ellipse(1, 1)));
    REQUIRE(rep.status == FactorStatus::Success);
    const auto& f = rep.factorizations.front();
    CHECK(max_abs_diff(f.factors[0], K - eps(quat::j)) < 1e-12);
    CHECK(max_abs_diff(f.factors[1], -K) < 1e-12);
}

TEST_CASE("factor_with_backtracking: generic input matches all_factorizations")
{
    Rng rng(23);
    const auto hs = random_rotation_chain(rng, 3);
    const auto c = validate_motion(product_of_linear(hs));
    const auto rep = factor_with_backtracking(c);
    REQUIRE(rep.status == FactorStatus::Success);
    CHECK(rep.factorizations.size() == 6);
    CHECK(contains(rep.factorizations, hs, 1e-7));
}

TEST_CASE("node budget")
{
    FactorOptions opt;
    opt.node_budget = 1;
    Rng rng(24);
    const auto c = validate_motion(product_of_linear(random_rotation_chain(rng, 3)));
    CHECK(factor_with_backtracking(c, opt).status == FactorStatus::NeedsMultiplier);
}

TEST_CASE("is_bounded")
{
    CHECK(is_bounded(validate_motion(DQPoly::linear(I))));
    CHECK_FALSE(is_bounded(validate_motion(DQPoly::linear(eps(quat::i)))));
    CHECK(is_bounded(validate_motion(ellipse(2, 1))));
    CHECK(is_bounded(validate_motion(ellipse(1, 1))));
}

TEST_CASE("factor_bounded_with_multiplier")
{
    SUBCASE("ellipse needs a quadratic multiplier")
    {
        const auto c = validate_motion(ellipse(2, 1));
        const auto rep = factor_bounded_with_multiplier(c);
        REQUIRE(rep.status == FactorStatus::Success);
        const auto& f = rep.factorizations.front();
        CHECK(f.multiplier.degree() <= 2);
        REQUIRE(f.factors.size() == 4);
        for (const auto& h : f.factors) CHECK(is_rotation(classify_generator(h)));
        CHECK(max_coeff_diff(f.product(), c.poly() * to_dq(f.multiplier)) < 1e-8);
    }
    SUBCASE("circle")
    {
        const auto rep = factor_bounded_with_multiplier(validate_motion(ellipse(1, 1)));
        REQUIRE(rep.status == FactorStatus::Success);
        CHECK(rep.factorizations.front().multiplier == RealPoly{1.0});
        CHECK(rep.factorizations.front().factors.size() == 2);
    }
    SUBCASE("generic")
    {
        Rng rng(25);
        const auto c = validate_motion(product_of_linear(random_rotation_chain(rng, 2)));
        const auto rep = factor_bounded_with_multiplier(c);
        REQUIRE(rep.status == FactorStatus::Success);
        CHECK(rep.factorizations.size() == 2);
    }
    SUBCASE("unbounded")
    {
        CHECK(kind_of([] { factor_bounded_with_multiplier(validate_motion(DQPoly::linear(eps(quat::i)))); }) ==
              ErrorKind::Unbounded);
    }
}

TEST_CASE("factor_quaternion")
{
    auto f = factor_quaternion(QuatPoly{quat::k, -(quat::i + quat::j), Quaternion(1.0)});
    REQUIRE(f.factors.size() == 2);
    CHECK(max_abs_diff(f.factors[0], I) < 1e-12);
    CHECK(max_abs_diff(f.factors[1], J) < 1e-12);

    f = factor_quaternion(QuatPoly{Quaternion(1.0), Quaternion(), Quaternion(1.0)});
    REQUIRE(f.factors.size() == 2);
    CHECK(max_abs_diff(f.factors[0], K) < 1e-15);
    CHECK(max_abs_diff(f.factors[1], -K) < 1e-15);

    Rng rng(26);
    for (int n = 0; n < 50; ++n) {
        QuatPoly p{Quaternion(1.0)};
        for (int k = 0; k < 4; ++k) p = p * QuatPoly::linear(Quaternion(uniform(rng, -1, 1)) + Quaternion::pure(random_vec(rng).normalized()));
        const auto g = factor_quaternion(p);
        CHECK(max_coeff_diff(primal(g.product()), p) < 1e-8 * (1.0 + p.max_abs()));
    }
}

TEST_CASE("right_multiply_and_factor")
{
    const auto c = validate_motion(DQPoly::linear(I));
    auto rep = right_multiply_and_factor(c, QuatPoly::linear(quat::i));
    REQUIRE(rep.status == FactorStatus::Success);
    CHECK(contains(rep.factorizations, {I, I}, 1e-10));

    const auto e = validate_motion(ellipse(1, 1));
    const auto r1 = right_multiply_and_factor(e, QuatPoly{Quaternion(1.0)});
    const auto r2 = factor_with_backtracking(e);
    REQUIRE(r1.status == r2.status);
    CHECK(same_factors(r1.factorizations.front(), r2.factorizations.front()));

    const auto el = right_multiply_and_factor(validate_motion(ellipse(2, 1)), QuatPoly::linear(quat::k));
    CHECK_FALSE(el.diagnostics.empty());
}
