#include "mofa/linkage.hpp"

#include "mofa/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace mofa {

namespace {

using json = nlohmann::ordered_json;

class UnionFind {
public:
    std::size_t add()
    {
        parent_.push_back(parent_.size());
        return parent_.size() - 1;
    }
    std::size_t find(std::size_t a)
    {
        while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

// Value of t - h at t0; the projective value at infinity is 1.
DualQuaternion linear_value(const DualQuaternion& h, double t0)
{
    if (std::isinf(t0)) return DualQuaternion(1.0);
    return DualQuaternion(t0) - h;
}

DualQuaternion normalized(const DualQuaternion& d)
{
    const double len = d.primal.length();
    return d * (1.0 / len);
}

Vec3 home_anchor(const Joint& j)
{
    const auto g = j.kind();
    if (is_rotation(g)) return std::get<RotationAxis>(g).point();
    return Vec3::Zero();
}

Vec3 home_direction(const Joint& j)
{
    const auto g = j.kind();
    if (is_rotation(g)) return std::get<RotationAxis>(g).direction;
    return std::get<TranslationDirection>(g).direction.normalized();
}

Vec3 rotate(const Quaternion& p, const Vec3& v)
{
    const Quaternion u = p / p.length();
    return (u * Quaternion::pure(v) * u.conj()).vec();
}

std::string kind_name(const Joint& j) { return is_rotation(j.kind()) ? "Rotation" : "Translation"; }

json dq_json(const DualQuaternion& h)
{
    json a = json::array();
    for (double v : h.to_array()) a.push_back(v);
    return a;
}

}  // namespace

const Joint& LinkGraph::joint(const std::string& id) const
{
    for (const auto& j : joints)
        if (j.id == id) return j;
    throw Error(ErrorKind::InvalidLinkGraph, "unknown joint " + id);
}

const Link& LinkGraph::link(const std::string& id) const
{
    for (const auto& l : links)
        if (l.id == id) return l;
    throw Error(ErrorKind::InvalidLinkGraph, "unknown link " + id);
}

std::pair<std::string, std::string> LinkGraph::edge(const std::string& joint_id) const
{
    const auto it = edges.find(joint_id);
    if (it == edges.end()) throw Error(ErrorKind::InvalidLinkGraph, "unknown joint " + joint_id);
    return it->second;
}

DQPoly Linkage::chain_product(const std::vector<std::string>& joint_ids) const
{
    DQPoly p{DualQuaternion(1.0)};
    for (const auto& id : joint_ids) p = p * DQPoly::linear(graph.joint(id).generator);
    return p;
}

Linkage assemble(const std::vector<LoopSpec>& loops, double tol)
{
    if (loops.empty()) throw Error(ErrorKind::InvalidLinkGraph, "no loops");
    Linkage l;
    std::map<std::string, std::size_t> joint_index;
    auto register_joint = [&](const Joint& j) {
        const auto it = joint_index.find(j.id);
        if (it != joint_index.end()) {
            if (max_abs_diff(l.graph.joints[it->second].generator, j.generator) > tol)
                throw Error(ErrorKind::InvalidLinkGraph, "joint " + j.id + " has conflicting generators");
            return;
        }
        try {
            (void)j.kind();
        } catch (const Error& e) {
            throw Error(ErrorKind::InvalidLinkGraph, "joint " + j.id + ": " + e.what());
        }
        joint_index[j.id] = l.graph.joints.size();
        l.graph.joints.push_back(j);
    };

    for (std::size_t k = 0; k < loops.size(); ++k) {
        const auto& spec = loops[k];
        if (spec.left.empty() || spec.right.empty()) throw Error(ErrorKind::InvalidLinkGraph, "empty chain");
        Loop loop;
        for (const auto& j : spec.left) {
            register_joint(j);
            loop.left.push_back(j.id);
        }
        for (const auto& j : spec.right) {
            register_joint(j);
            loop.right.push_back(j.id);
        }
        const DQPoly a = l.chain_product(loop.left), b = l.chain_product(loop.right);
        const double res = max_coeff_diff(a, b);
        if (res > tol * (1.0 + std::max(a.max_abs(), b.max_abs()))) {
            std::ostringstream os;
            os << "loop " << k << " does not close, residual " << res;
            throw Error(ErrorKind::ClosureMismatch, os.str());
        }
        l.loops.push_back(std::move(loop));
    }

    // sides: 2 * joint index + 0 (before) / 1 (after)
    UnionFind uf;
    for (std::size_t i = 0; i < 2 * l.graph.joints.size(); ++i) uf.add();
    auto before = [&](const std::string& id) { return 2 * joint_index.at(id); };
    auto after = [&](const std::string& id) { return 2 * joint_index.at(id) + 1; };
    for (const auto& loop : l.loops) {
        uf.unite(before(loop.left.front()), before(loop.right.front()));
        for (const auto* chain : {&loop.left, &loop.right})
            for (std::size_t i = 0; i + 1 < chain->size(); ++i) uf.unite(after((*chain)[i]), before((*chain)[i + 1]));
        uf.unite(after(loop.left.back()), after(loop.right.back()));
    }

    std::map<std::size_t, std::size_t> class_to_link;
    auto link_of = [&](std::size_t side) {
        const std::size_t root = uf.find(side);
        auto it = class_to_link.find(root);
        if (it == class_to_link.end()) {
            it = class_to_link.emplace(root, l.graph.links.size()).first;
            l.graph.links.push_back({"L" + std::to_string(l.graph.links.size()), {}});
        }
        return it->second;
    };
    // ground first so that it is L0
    link_of(before(l.loops.front().left.front()));
    for (const auto& j : l.graph.joints) {
        const std::size_t lb = link_of(before(j.id)), la = link_of(after(j.id));
        if (lb == la) throw Error(ErrorKind::InvalidLinkGraph, "joint " + j.id + " connects a link to itself");
        l.graph.links[lb].joint_ids.push_back(j.id);
        l.graph.links[la].joint_ids.push_back(j.id);
        l.graph.edges[j.id] = {l.graph.links[lb].id, l.graph.links[la].id};
    }
    l.ground = l.graph.links.front().id;

    // connectivity
    std::set<std::string> seen{l.ground};
    std::deque<std::string> queue{l.ground};
    while (!queue.empty()) {
        const std::string cur = queue.front();
        queue.pop_front();
        for (const auto& [jid, e] : l.graph.edges) {
            for (const auto& [a, b] : {std::pair{e.first, e.second}, std::pair{e.second, e.first}})
                if (a == cur && seen.insert(b).second) queue.push_back(b);
        }
    }
    if (seen.size() != l.graph.links.size()) throw Error(ErrorKind::InvalidLinkGraph, "link graph is not connected");
    return l;
}

double loop_residual(const Linkage& l, double t0)
{
    double worst = 0.0;
    for (const auto& loop : l.loops) {
        DualQuaternion a(1.0), b(1.0);
        for (const auto& id : loop.left) a = a * linear_value(l.graph.joint(id).generator, t0);
        for (const auto& id : loop.right) b = b * linear_value(l.graph.joint(id).generator, t0);
        worst = std::max(worst, max_abs_diff(a, b) / std::max({1e-300, a.max_abs(), b.max_abs()}));
    }
    return worst;
}

ConfigurationSample sample_configuration(const Linkage& l, double t0, double tol)
{
    ConfigurationSample s;
    s.t = t0;
    for (const auto& j : l.graph.joints) {
        const DualQuaternion f = linear_value(j.generator, t0);
        if (f.primal.norm() <= tol * std::max(1.0, f.max_abs() * f.max_abs()))
            throw Error(ErrorKind::SingularParameter, "joint " + j.id + " is singular at the sampled parameter");
    }
    s.link_displacements[l.ground] = DualQuaternion(1.0);
    std::deque<std::string> queue{l.ground};
    while (!queue.empty()) {
        const std::string cur = queue.front();
        queue.pop_front();
        const DualQuaternion d = s.link_displacements.at(cur);
        for (const auto& j : l.graph.joints) {
            const auto& [b, a] = l.graph.edge(j.id);
            const DualQuaternion f = linear_value(j.generator, t0);
            if (b == cur && !s.link_displacements.count(a)) {
                s.link_displacements[a] = normalized(d * f);
                queue.push_back(a);
            } else if (a == cur && !s.link_displacements.count(b)) {
                s.link_displacements[b] = normalized(d * f.conj());
                queue.push_back(b);
            }
        }
    }
    for (const auto& j : l.graph.joints) {
        const DualQuaternion& d = s.link_displacements.at(l.graph.edge(j.id).first);
        s.joint_positions[j.id] = act_on_point(d, home_anchor(j));
        s.joint_directions[j.id] = rotate(d.primal, home_direction(j));
    }
    s.loop_residual = loop_residual(l, t0);
    return s;
}

double line_distance(const Vec3& p1, const Vec3& d1, const Vec3& p2, const Vec3& d2)
{
    const Vec3 n = d1.cross(d2);
    const Vec3 w = p2 - p1;
    if (n.norm() < 1e-12) return (w - w.dot(d1) * d1).norm();
    return std::abs(w.dot(n)) / n.norm();
}

RigidityReport rigidity_check(const Linkage& l, const std::vector<double>& samples)
{
    RigidityReport rep;
    std::vector<ConfigurationSample> cs;
    for (double t : samples) {
        cs.push_back(sample_configuration(l, t));
        rep.worst_loop_residual = std::max(rep.worst_loop_residual, cs.back().loop_residual);
    }
    for (const auto& link : l.graph.links) {
        double dev = 0.0;
        const auto& ids = link.joint_ids;
        for (std::size_t a = 0; a < ids.size(); ++a)
            for (std::size_t b = a + 1; b < ids.size(); ++b) {
                const bool rot = is_rotation(l.graph.joint(ids[a]).kind()) && is_rotation(l.graph.joint(ids[b]).kind());
                std::vector<std::array<double, 3>> vals;
                for (const auto& c : cs) {
                    const Vec3 pa = c.joint_positions.at(ids[a]), pb = c.joint_positions.at(ids[b]);
                    const Vec3 da = c.joint_directions.at(ids[a]), db = c.joint_directions.at(ids[b]);
                    vals.push_back({da.dot(db), rot ? (pa - pb).norm() : 0.0, rot ? line_distance(pa, da, pb, db) : 0.0});
                }
                for (std::size_t q = 0; q < 3; ++q) {
                    auto [lo, hi] = std::minmax_element(vals.begin(), vals.end(),
                                                        [&](const auto& x, const auto& y) { return x[q] < y[q]; });
                    dev = std::max(dev, (*hi)[q] - (*lo)[q]);
                }
            }
        rep.max_deviation[link.id] = dev;
        rep.worst = std::max(rep.worst, dev);
    }
    return rep;
}

std::vector<Vec3> trajectory(const Linkage& l, const std::string& link_id, const Vec3& point, const std::vector<double>& t_samples)
{
    (void)l.graph.link(link_id);
    std::vector<Vec3> out;
    for (double t : t_samples) out.push_back(act_on_point(sample_configuration(l, t).link_displacements.at(link_id), point));
    return out;
}

std::vector<double> default_samples(const Linkage& l, int n, double lo, double hi)
{
    std::vector<double> roots;
    for (const auto& j : l.graph.joints) {
        const double s = j.generator.primal.w, r2 = j.generator.primal.vec().squaredNorm();
        if (r2 <= 1e-12) roots.push_back(s);
    }
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        double t = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
        for (double r : roots)
            if (std::abs(t - r) < 1e-3) t = r + 2e-3;
        out.push_back(t);
    }
    return out;
}

bool is_planar(const Linkage& l, double tol)
{
    std::optional<Vec3> axis;
    for (const auto& j : l.graph.joints)
        if (is_rotation(j.kind())) {
            const Vec3 d = home_direction(j);
            if (!axis) axis = d;
            else if (axis->cross(d).norm() > tol) return false;
        }
    if (!axis) return true;
    for (const auto& j : l.graph.joints)
        if (!is_rotation(j.kind()) && std::abs(axis->dot(home_direction(j))) > tol) return false;
    return true;
}

std::string export_json(const Linkage& l)
{
    json j;
    j["joints"] = json::array();
    for (const auto& jt : l.graph.joints)
        j["joints"].push_back({{"id", jt.id}, {"generator", dq_json(jt.generator)}, {"kind", kind_name(jt)}});
    j["links"] = json::array();
    for (const auto& lk : l.graph.links) j["links"].push_back({{"id", lk.id}, {"joints", lk.joint_ids}});
    j["loops"] = json::array();
    for (const auto& lp : l.loops) j["loops"].push_back({{"left", lp.left}, {"right", lp.right}});
    j["ground"] = l.ground;
    if (l.tracer) j["tracer"] = {{"link", l.tracer->link}, {"point", {l.tracer->point.x(), l.tracer->point.y(), l.tracer->point.z()}}};
    if (!l.notes.empty()) j["notes"] = l.notes;
    return j.dump(2);
}

Linkage import_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    try {
        std::map<std::string, Joint> joints;
        for (const auto& jt : j.at("joints")) {
            const auto g = jt.at("generator").get<std::vector<double>>();
            if (g.size() != 8) throw Error(ErrorKind::ParseError, "generator needs 8 numbers");
            std::array<double, 8> a{};
            std::copy(g.begin(), g.end(), a.begin());
            const auto id = jt.at("id").get<std::string>();
            joints[id] = {id, DualQuaternion::from_array(a)};
        }
        std::vector<LoopSpec> specs;
        for (const auto& lp : j.at("loops")) {
            LoopSpec s;
            for (const auto& id : lp.at("left")) s.left.push_back(joints.at(id.get<std::string>()));
            for (const auto& id : lp.at("right")) s.right.push_back(joints.at(id.get<std::string>()));
            specs.push_back(std::move(s));
        }
        Linkage l = assemble(specs);
        // keep the file's link names
        if (j.contains("links")) {
            std::map<std::string, std::string> rename;
            for (const auto& lk : j.at("links")) {
                auto ids = lk.at("joints").get<std::vector<std::string>>();
                std::sort(ids.begin(), ids.end());
                for (const auto& ours : l.graph.links) {
                    auto mine = ours.joint_ids;
                    std::sort(mine.begin(), mine.end());
                    if (mine == ids) rename[ours.id] = lk.at("id").get<std::string>();
                }
            }
            if (rename.size() != l.graph.links.size())
                throw Error(ErrorKind::InvalidLinkGraph, "links in the file do not match the loops");
            for (auto& lk : l.graph.links) lk.id = rename.at(lk.id);
            for (auto& [jid, e] : l.graph.edges) e = {rename.at(e.first), rename.at(e.second)};
            l.ground = rename.at(l.ground);
        }
        if (j.contains("ground")) {
            const auto g = j.at("ground").get<std::string>();
            (void)l.graph.link(g);
            l.ground = g;
        }
        if (j.contains("tracer")) {
            const auto p = j.at("tracer").at("point").get<std::vector<double>>();
            if (p.size() != 3) throw Error(ErrorKind::ParseError, "tracer point needs 3 numbers");
            l.tracer = Tracer{j.at("tracer").at("link").get<std::string>(), Vec3(p[0], p[1], p[2])};
            (void)l.graph.link(l.tracer->link);
        }
        if (j.contains("notes")) l.notes = j.at("notes").get<std::vector<std::string>>();
        return l;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    } catch (const std::out_of_range& e) {
        throw Error(ErrorKind::ParseError, std::string("unknown joint id: ") + e.what());
    }
}

std::string export_csv(const Linkage& l, const std::vector<double>& t_samples)
{
    std::ostringstream os;
    os.precision(15);
    os << "t,joint_id,x,y,z\n";
    for (double t : t_samples) {
        const auto s = sample_configuration(l, t);
        for (const auto& j : l.graph.joints) {
            const Vec3& p = s.joint_positions.at(j.id);
            os << t << ',' << j.id << ',' << p.x() << ',' << p.y() << ',' << p.z() << '\n';
        }
        if (l.tracer) {
            const Vec3 p = act_on_point(s.link_displacements.at(l.tracer->link), l.tracer->point);
            os << t << ",tracer," << p.x() << ',' << p.y() << ',' << p.z() << '\n';
        }
    }
    return os.str();
}

std::string export_svg(const Linkage& l, const std::vector<double>& t_samples)
{
    if (!is_planar(l)) throw Error(ErrorKind::NotPlanar, "svg export needs all rotation axes parallel");
    Vec3 d = Vec3::UnitZ();
    for (const auto& j : l.graph.joints)
        if (is_rotation(j.kind())) {
            d = home_direction(j);
            break;
        }
    if (d.z() < 0) d = -d;
    Vec3 e1 = Vec3::UnitX() - Vec3::UnitX().dot(d) * d;
    if (e1.norm() < 0.1) e1 = Vec3::UnitY() - Vec3::UnitY().dot(d) * d;
    e1.normalize();
    const Vec3 e2 = d.cross(e1);
    auto project = [&](const Vec3& p) { return std::pair{p.dot(e1), -p.dot(e2)}; };

    std::map<std::string, std::vector<std::pair<double, double>>> paths;
    std::vector<std::pair<std::string, std::pair<double, double>>> markers;
    bool first = true;
    for (double t : t_samples) {
        const auto s = sample_configuration(l, t);
        for (const auto& j : l.graph.joints) {
            const auto p = project(s.joint_positions.at(j.id));
            paths[j.id].push_back(p);
            if (first) markers.emplace_back(j.id, p);
        }
        if (l.tracer) paths["tracer"].push_back(project(act_on_point(s.link_displacements.at(l.tracer->link), l.tracer->point)));
        first = false;
    }
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& [id, pts] : paths)
        for (const auto& [x, y] : pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (paths.empty()) xmin = ymin = -1, xmax = ymax = 1;
    const double pad = 0.05 * std::max({xmax - xmin, ymax - ymin, 1e-6});
    const double r = pad * 0.3;
    std::ostringstream os;
    os.precision(10);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << xmin - pad << ' ' << ymin - pad << ' '
       << xmax - xmin + 2 * pad << ' ' << ymax - ymin + 2 * pad << "\">\n";
    for (const auto& [id, pts] : paths) {
        os << "  <polyline id=\"" << id << "\" fill=\"none\" stroke=\"" << (id == "tracer" ? "red" : "gray")
           << "\" stroke-width=\"" << r * 0.3 << "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << pts[i].first << ',' << pts[i].second;
        os << "\"/>\n";
    }
    for (const auto& [id, p] : markers)
        os << "  <circle id=\"joint-" << id << "\" cx=\"" << p.first << "\" cy=\"" << p.second << "\" r=\"" << r
           << "\" fill=\"black\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace mofa
