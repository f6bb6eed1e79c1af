#include "doctest.h"
#include "test_support.hpp"

#include "mofa/error.hpp"
#include "mofa/synthesis.hpp"

#include <Eigen/Dense>

#include <regex>

using namespace mofa;
using namespace mofa::testing;

namespace {

const DualQuaternion I = quat::i, J = quat::j, K = quat::k, ONE(1.0);

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

Linkage random_bennett(Rng& rng)
{
    const auto hs = random_rotation_chain(rng, 2);
    const auto fs = all_factorizations(validate_motion(product_of_linear(hs)));
    return assemble({{{{"h1", fs[0].factors[0]}, {"h2", fs[0].factors[1]}}, {{"k1", fs[1].factors[0]}, {"k2", fs[1].factors[1]}}}});
}

Linkage circle_linkage()
{
    const DualQuaternion h1{quat::k, -quat::j}, h2 = -K;  // f = g = 0, a = 1
    const DualQuaternion k1{quat::k, Quaternion(0, -0.5, -1.5, 0)}, k2{-quat::k, Quaternion(0, 0.5, 0.5, 0)};
    return assemble({{{{"h1", h1}, {"h2", h2}}, {{"k1", k1}, {"k2", k2}}}});
}

// Smallest relative singular value of the linear system x(t) d(t) = n(t), deg d, deg n <= deg.
double rational_fit_residual(const std::vector<double>& ts, const std::vector<Vec3>& pts, int deg)
{
    const int m = deg + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3 * static_cast<Eigen::Index>(ts.size()), 4 * m);
    for (std::size_t s = 0; s < ts.size(); ++s)
        for (int c = 0; c < 3; ++c) {
            const Eigen::Index row = 3 * static_cast<Eigen::Index>(s) + c;
            double p = 1.0;
            for (int k = 0; k < m; ++k, p *= ts[s]) {
                A(row, k) = pts[s](c) * p;
                A(row, m * (c + 1) + k) = -p;
            }
        }
    for (Eigen::Index r = 0; r < A.rows(); ++r) A.row(r) /= A.row(r).norm();
    const Eigen::VectorXd sv = A.jacobiSvd().singularValues();
    return sv(sv.size() - 1) / sv(0);
}

}  // namespace

TEST_CASE("assemble a Bennett loop")
{
    Rng rng(41);
    const auto l = random_bennett(rng);
    CHECK(l.graph.links.size() == 4);
    CHECK(l.graph.joints.size() == 4);
    CHECK(l.ground == "L0");
    const auto& g = l.graph.link(l.ground);
    CHECK(g.joint_ids == std::vector<std::string>{"h1", "k1"});
    for (const auto& j : l.graph.joints) {
        int count = 0;
        for (const auto& lk : l.graph.links) count += std::count(lk.joint_ids.begin(), lk.joint_ids.end(), j.id);
        CHECK(count == 2);
    }
}

TEST_CASE("assemble errors")
{
    CHECK(kind_of([] { assemble({{{{"a", I}}, {{"b", J}}}}); }) == ErrorKind::ClosureMismatch);
    CHECK(kind_of([] { assemble({}); }) == ErrorKind::InvalidLinkGraph);
    CHECK(kind_of([] { assemble({{{{"a", ONE * 2.0}}, {{"b", ONE * 2.0}}}}); }) == ErrorKind::InvalidLinkGraph);
}

TEST_CASE("sample_configuration")
{
    Rng rng(42);
    const auto l = random_bennett(rng);
    const auto inf = sample_configuration(l, std::numeric_limits<double>::infinity());
    for (const auto& [id, d] : inf.link_displacements) CHECK(max_abs_diff(d, ONE) < 1e-15);
    for (int n = 0; n < 10; ++n) {
        const double t = uniform(rng, -5, 5);
        const auto s = sample_configuration(l, t);
        CHECK(s.loop_residual < 1e-9);
        // coupler reached through either chain
        const auto coupler = l.graph.edge("h2").second;
        const DualQuaternion left = (DualQuaternion(t) - l.graph.joint("h1").generator) * (DualQuaternion(t) - l.graph.joint("h2").generator);
        CHECK(pose_distance(s.link_displacements.at(coupler), left) < 1e-9);
    }
    const auto sing = assemble({{{{"a", ONE - DualQuaternion{{}, quat::i}}}, {{"b", ONE - DualQuaternion{{}, quat::i}}}}});
    CHECK(kind_of([&] { sample_configuration(sing, 1.0); }) == ErrorKind::SingularParameter);
}

TEST_CASE("rigidity_check")
{
    Rng rng(43);
    auto l = random_bennett(rng);
    CHECK(rigidity_check(l, default_samples(l)).worst < 1e-7);

    // move one axis by 1e-3: the loop no longer closes and links deform
    auto& j = l.graph.joints[3];
    const DualQuaternion tr = make_translation(Vec3(1e-3, 0, 0));
    j.generator = tr * j.generator * tr.conj();
    CHECK(rigidity_check(l, default_samples(l)).worst > 1e-4);

    const auto c = circle_linkage();
    const auto rep = rigidity_check(c, default_samples(c));
    CHECK(rep.worst < 1e-7);
}

TEST_CASE("trajectory")
{
    Rng rng(44);
    const auto l = random_bennett(rng);
    const Vec3 x(0.4, -0.3, 1.2);
    std::vector<double> ts;
    for (int k = 0; k < 30; ++k) ts.push_back(-4.0 + 8.0 * k / 29.0);
    for (const auto& p : trajectory(l, l.ground, x, ts)) CHECK((p - x).norm() < 1e-12);

    const auto coupler = l.graph.edge("h2").second;
    const auto pts = trajectory(l, coupler, x, ts);
    CHECK(rational_fit_residual(ts, pts, 4) < 1e-9);
    CHECK(rational_fit_residual(ts, pts, 2) > 1e-6);

    // circular translation: the origin moves on the unit circle around (-1, 0, 0)
    const auto c = circle_linkage();
    for (const auto& p : trajectory(c, c.graph.edge("h2").second, Vec3::Zero(), ts)) {
        CHECK(std::abs((p - Vec3(-1, 0, 0)).norm() - 1.0) < 1e-12);
        CHECK(std::abs(p.z()) < 1e-15);
    }
}

TEST_CASE("export and import")
{
    Rng rng(45);
    const auto l = random_bennett(rng);
    const auto back = import_json(export_json(l));
    CHECK(back.ground == l.ground);
    REQUIRE(back.graph.joints.size() == l.graph.joints.size());
    for (std::size_t i = 0; i < l.graph.joints.size(); ++i) {
        CHECK(back.graph.joints[i].id == l.graph.joints[i].id);
        CHECK(max_abs_diff(back.graph.joints[i].generator, l.graph.joints[i].generator) < 1e-15);
    }
    CHECK(export_json(back) == export_json(l));
    CHECK(kind_of([&] { export_svg(l, default_samples(l)); }) == ErrorKind::NotPlanar);
    const auto csv = export_csv(l, {0.0, 1.0});
    CHECK(csv.rfind("t,joint_id,x,y,z\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
    CHECK(kind_of([] { import_json("{not json"); }) == ErrorKind::ParseError);
}

TEST_CASE("ellipse svg contains the tracer curve")
{
    const CurveNumerator v{RealPoly{-4.0}, RealPoly{0.0, -2.0}, RealPoly{}};
    const auto res = kempe_linkage_for_curve(v, RealPoly{1.0, 0.0, 1.0});
    const auto& l = res.linkage;
    const auto back = import_json(export_json(l));
    CHECK(export_json(back) == export_json(l));
    REQUIRE(back.tracer);

    std::vector<double> ts;
    for (int k = 0; k < 40; ++k) ts.push_back(-8.0 + 16.0 * k / 39.0);
    const std::string svg = export_svg(l, ts);
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, std::regex("id=\"tracer\"[^>]*points=\"([^\"]*)\"")));
    std::istringstream is(m[1].str());
    std::string pair;
    const Vec3 p0 = l.tracer->point;
    std::size_t k = 0;
    while (is >> pair) {
        const auto comma = pair.find(',');
        const double x = std::stod(pair.substr(0, comma)), y = -std::stod(pair.substr(comma + 1));
        const double t = ts[k++];
        CHECK(std::abs(x - p0.x() + 4.0 / (t * t + 1)) < 1e-6);
        CHECK(std::abs(y - p0.y() + 2.0 * t / (t * t + 1)) < 1e-6);
    }
    CHECK(k == ts.size());
}
