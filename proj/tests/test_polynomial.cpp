#include "doctest.h"
#include "test_support.hpp"

#include "mofa/error.hpp"

using namespace mofa;
using namespace mofa::testing;

namespace {

const DualQuaternion I = quat::i, J = quat::j, K = quat::k;
const DualQuaternion EI{{}, quat::i};

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

// Integer-coefficient irreducible real polynomials used to build known real factors.
const std::vector<RealPoly> kIrreducibles{{-1.0, 1.0}, {2.0, 1.0}, {1.0, 0.0, 1.0}, {5.0, -2.0, 1.0}, {3.0, 1.0}};

// Repeated exact division by the known irreducibles; only valid for integer inputs built from them.
RealPoly real_factor_oracle(const std::vector<RealPoly>& comps)
{
    RealPoly g{1.0};
    std::vector<RealPoly> cur = comps;
    for (const auto& f : kIrreducibles) {
        for (;;) {
            bool all = true;
            std::vector<RealPoly> next;
            for (const auto& c : cur) {
                if (c.is_zero()) {
                    next.push_back(c);
                    continue;
                }
                const auto [q, r] = right_divide(c, f, 0.0);
                if (r.max_abs() > 1e-9 * c.max_abs()) all = false;
                next.push_back(q);
            }
            if (!all) break;
            cur = next;
            g = g * f;
        }
    }
    return g;
}

}  // namespace

TEST_CASE("products of linear polynomials")
{
    const DQPoly c = DQPoly::linear(I) * DQPoly::linear(J);
    CHECK(c == DQPoly{K, -(I + J), DualQuaternion(1.0)});
    CHECK(c.degree() == 2);
    CHECK(DQPoly::linear(J) * DQPoly::linear(I) == DQPoly{-K, -(I + J), DualQuaternion(1.0)});
}

TEST_CASE("evaluation and right evaluation")
{
    const DQPoly c = DQPoly::linear(I) * DQPoly::linear(J);
    CHECK(c.right_eval(J) == DualQuaternion{});
    CHECK(c.right_eval(I) != DualQuaternion{});
    CHECK(c.eval(2.0) == (DualQuaternion(2.0) - I) * (DualQuaternion(2.0) - J));
    CHECK(c.eval(std::numeric_limits<double>::infinity()) == DualQuaternion(1.0));
    Rng rng(11);
    for (int n = 0; n < 50; ++n) {
        std::vector<DualQuaternion> cs;
        for (int k = 0; k < 5; ++k) cs.push_back(random_dq(rng));
        const DQPoly p(cs);
        const auto h = random_dq(rng);
        CHECK(max_abs_diff(p.right_eval(h), right_eval_oracle(p, h)) < 1e-12);
        // right-evaluation at a root of the rightmost linear factor vanishes
        const auto g = random_rotation_generator(rng);
        const DQPoly q = p * DQPoly::linear(g);
        CHECK(q.right_eval(g).max_abs() < 1e-12 * (1.0 + q.max_abs()));
    }
}

TEST_CASE("norm_poly")
{
    const auto n1 = norm_poly(DQPoly::linear(I));
    CHECK(n1.re == RealPoly{1.0, 0.0, 1.0});
    CHECK(n1.du.is_zero());
    const auto n3 = norm_poly(DQPoly::linear(EI));
    CHECK(n3.re == RealPoly{0.0, 0.0, 1.0});
    CHECK(n3.du.is_zero());
    Rng rng(12);
    const auto hs = random_rotation_chain(rng, 3);
    const auto nn = norm_poly(product_of_linear(hs));
    RealPoly expected{1.0};
    for (const auto& h : hs) expected = expected * norm_poly(DQPoly::linear(h)).re;
    CHECK(approx_equal(nn.re, expected, 1e-12));
    CHECK(nn.du.max_abs() < 1e-12);
}

TEST_CASE("right_divide")
{
    const DQPoly c{DualQuaternion(1.0) + EI, DualQuaternion{}, DualQuaternion(1.0)};
    const DQPoly d{DualQuaternion(1.0), DualQuaternion{}, DualQuaternion(1.0)};
    const auto [q, r] = right_divide(c, d);
    CHECK(q == DQPoly{DualQuaternion(1.0)});
    CHECK(r == DQPoly{EI});
    CHECK(kind_of([&] { right_divide(c, DQPoly{}); }) == ErrorKind::DivisionByZero);
    CHECK(kind_of([&] { right_divide(c, DQPoly{DualQuaternion(1.0), EI}); }) == ErrorKind::NonInvertibleDivisorLeading);

    Rng rng(13);
    for (int n = 0; n < 50; ++n) {
        std::vector<DualQuaternion> a, b;
        for (int k = 0; k < 6; ++k) a.push_back(random_dq(rng));
        for (int k = 0; k < 3; ++k) b.push_back(random_dq(rng));
        const DQPoly pa(a), pb(b);
        const auto [qq, rr] = right_divide(pa, pb);
        CHECK(rr.degree() < pb.degree());
        CHECK(coefficient_residual(qq * pb + rr, pa) < 1e-10);
    }
}

TEST_CASE("validate_motion")
{
    CHECK(validate_motion(DQPoly::linear(I)).norm() == RealPoly{1.0, 0.0, 1.0});
    const DQPoly bad{DualQuaternion{quat::one, quat::one}, DualQuaternion(1.0)};
    CHECK(kind_of([&] { validate_motion(bad); }) == ErrorKind::NonRealNorm);
    CHECK(kind_of([&] { validate_motion(DQPoly{}); }) == ErrorKind::ZeroNorm);
    CHECK(kind_of([&] { validate_motion(DQPoly{DualQuaternion(1.0), EI}); }) == ErrorKind::NonInvertibleLeading);

    Rng rng(14);
    const auto h = random_displacement(rng, 2.0);
    const DQPoly c = product_of_linear(random_rotation_chain(rng, 2)).times_right(h);
    const auto m = make_monic(validate_motion(c));
    CHECK(m.is_monic());
    for (double t0 : {-1.0, 0.5, 3.0}) {
        const Vec3 x = random_vec(rng);
        const Vec3 a = act_on_point(c.eval(t0), act_on_point(h.inverse(), x));
        CHECK((act_on_point(m.poly().eval(t0), x) - a).norm() < 1e-10);
    }
}

TEST_CASE("max_real_factor")
{
    const QuatPoly p = primal(DQPoly::linear(DualQuaternion(1.0)) * DQPoly::linear(J));
    CHECK(approx_equal(max_real_factor(p), RealPoly{-1.0, 1.0}));
    CHECK(max_real_factor(primal(DQPoly::linear(I) * DQPoly::linear(J))) == RealPoly{1.0});
    const QuatPoly sq = to_quat(RealPoly{1.0, 0.0, 1.0}) * primal(DQPoly::linear(I));
    CHECK(approx_equal(max_real_factor(sq), RealPoly{1.0, 0.0, 1.0}));
    CHECK(kind_of([] { max_real_factor(QuatPoly{}); }) == ErrorKind::DivisionByZero);
}

// Integer P = R Q with R built from known irreducibles; Q has linear factors with distinct norms,
// so it carries no real factor and the exact-division oracle recovers R.
TEST_CASE("max_real_factor against the exact-division oracle")
{
    Rng rng(15);
    std::uniform_int_distribution<int> coef(-3, 3), pick(0, static_cast<int>(kIrreducibles.size()) - 1), count(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        RealPoly r{1.0};
        const int nr = count(rng);
        for (int k = 0; k < nr; ++k) r = r * kIrreducibles[static_cast<std::size_t>(pick(rng))];
        QuatPoly q{Quaternion(1.0)};
        std::vector<double> norms;
        const int nq = 1 + count(rng) % 2;
        while (static_cast<int>(norms.size()) < nq) {
            const Quaternion h(coef(rng), coef(rng), coef(rng), coef(rng));
            if (h.vec().squaredNorm() == 0.0) continue;
            const double nn = h.norm() * 1000 + h.w;
            if (std::find(norms.begin(), norms.end(), nn) != norms.end()) continue;
            norms.push_back(nn);
            q = q * QuatPoly::linear(h);
        }
        const QuatPoly p = to_quat(r) * q;
        const auto comps = components(p);
        const RealPoly expected = real_factor_oracle({comps.begin(), comps.end()});
        CHECK(approx_equal(expected, r, 1e-12));
        const RealPoly got = max_real_factor(p);
        CHECK_MESSAGE(approx_equal(got, expected, 1e-6), to_string(got), " vs ", to_string(expected));
    }
}

TEST_CASE("quadratic_factors")
{
    const RealPoly q{1.0, 0.0, 1.0};
    auto f = quadratic_factors(q * q);
    REQUIRE(f.factors.size() == 2);
    CHECK(approx_equal(f.factors[0], q, 1e-8));
    CHECK(approx_equal(f.factors[1], q, 1e-8));
    CHECK_FALSE(f.ill_conditioned);

    f = quadratic_factors(RealPoly{0.0, 0.0, 1.0});
    REQUIRE(f.factors.size() == 1);
    CHECK(approx_equal(f.factors[0], RealPoly{0.0, 0.0, 1.0}, 1e-8));

    CHECK(kind_of([] { quadratic_factors(RealPoly{-1.0, 0.0, 1.0}); }) == ErrorKind::NotNonnegative);
    CHECK(kind_of([] { quadratic_factors(RealPoly{1.0, 1.0, 1.0, 1.0}); }) == ErrorKind::OddDegree);

    Rng rng(16);
    for (int trial = 0; trial < 100; ++trial) {
        const auto hs = random_rotation_chain(rng, 1 + trial % 4);
        RealPoly n{1.0};
        std::vector<RealPoly> expected;
        for (const auto& h : hs) {
            expected.push_back(norm_poly(DQPoly::linear(h)).re);
            n = n * expected.back();
        }
        const auto got = quadratic_factors(n * 3.0);
        REQUIRE(got.factors.size() == expected.size());
        RealPoly prod{1.0};
        for (const auto& g : got.factors) {
            prod = prod * g;
            const bool found = std::any_of(expected.begin(), expected.end(),
                                           [&](const RealPoly& e) { return approx_equal(e, g, 1e-7); });
            CHECK(found);
        }
        CHECK(approx_equal(prod, n, 1e-8));
    }
}

TEST_CASE("quadratic_factors with repeated factors")
{
    const RealPoly a{5.0, -2.0, 1.0}, b{2.0, 2.0, 1.0};
    const auto f = quadratic_factors(a * a * a * b);
    REQUIRE(f.factors.size() == 4);
    int na = 0, nb = 0;
    for (const auto& g : f.factors) {
        na += approx_equal(g, a, 1e-6);
        nb += approx_equal(g, b, 1e-6);
    }
    CHECK(na == 3);
    CHECK(nb == 1);
}

TEST_CASE("real_gcd and divides")
{
    const RealPoly a = RealPoly{-1.0, 1.0} * RealPoly{1.0, 0.0, 1.0};
    const RealPoly b = RealPoly{1.0, 0.0, 1.0} * RealPoly{2.0, 1.0};
    CHECK(approx_equal(real_gcd(a, b), RealPoly{1.0, 0.0, 1.0}));
    CHECK(real_gcd(RealPoly{-1.0, 1.0}, RealPoly{1.0, 1.0}) == RealPoly{1.0});
    CHECK(divides(RealPoly{1.0, 0.0, 1.0}, a));
    CHECK_FALSE(divides(RealPoly{2.0, 1.0}, a));
}

TEST_CASE("to_string")
{
    CHECK(to_string(RealPoly{1.0, 0.0, 1.0}) == "t^2 + 1");
    CHECK(to_string(RealPoly{-2.0, 1.0}) == "t - 2");
    CHECK(to_string(RealPoly{}) == "0");
}
