#pragma once

#include "mofa/dual_quaternion.hpp"
#include "mofa/polynomial.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mofa {

/// Revolute or prismatic joint t - generator.
struct Joint {
    std::string id;
    DualQuaternion generator;

    Generator kind() const { return classify_generator(generator, 1e-7 * std::max(1.0, generator.max_abs())); }
};

struct Link {
    std::string id;
    std::vector<std::string> joint_ids;
};

struct LinkGraph {
    std::vector<Link> links;
    std::vector<Joint> joints;

    const Joint& joint(const std::string& id) const;
    const Link& link(const std::string& id) const;
    /// The two links sharing a joint, ordered (before, after) along the joint's factor.
    std::pair<std::string, std::string> edge(const std::string& joint_id) const;

    std::map<std::string, std::pair<std::string, std::string>> edges;
};

/// Closure loop: the products of t - h over both chains agree.
struct Loop {
    std::vector<std::string> left;
    std::vector<std::string> right;
};

struct LoopSpec {
    std::vector<Joint> left;
    std::vector<Joint> right;
};

struct Tracer {
    std::string link;
    Vec3 point;
};

struct Linkage {
    LinkGraph graph;
    std::vector<Loop> loops;
    std::string ground;
    std::optional<Tracer> tracer;
    std::vector<std::string> notes;

    DQPoly chain_product(const std::vector<std::string>& joint_ids) const;
};

struct ConfigurationSample {
    double t = 0.0;
    std::map<std::string, DualQuaternion> link_displacements;
    std::map<std::string, Vec3> joint_positions;
    std::map<std::string, Vec3> joint_directions;
    double loop_residual = 0.0;
};

/// Merges consecutive chain positions into rigid links. Throws ClosureMismatch or InvalidLinkGraph.
Linkage assemble(const std::vector<LoopSpec>& loops, double tol = 1e-8);

/// Largest relative loop-closure residual at t0.
double loop_residual(const Linkage& l, double t0);

/// Link displacements relative to ground at t0 (t0 may be +-infinity). Throws SingularParameter.
ConfigurationSample sample_configuration(const Linkage& l, double t0, double tol = 1e-9);

struct RigidityReport {
    std::map<std::string, double> max_deviation;  // per link
    double worst = 0.0;
    double worst_loop_residual = 0.0;
};

RigidityReport rigidity_check(const Linkage& l, const std::vector<double>& samples);

std::vector<Vec3> trajectory(const Linkage& l, const std::string& link_id, const Vec3& point, const std::vector<double>& t_samples);

/// n equally spaced parameters in [lo, hi], nudged away from the real roots of the joint norms.
std::vector<double> default_samples(const Linkage& l, int n = 25, double lo = -5.0, double hi = 5.0);

/// Smallest distance between two lines given by point and unit direction.
double line_distance(const Vec3& p1, const Vec3& d1, const Vec3& p2, const Vec3& d2);

bool is_planar(const Linkage& l, double tol = 1e-8);

std::string export_json(const Linkage& l);
Linkage import_json(const std::string& text);
std::string export_csv(const Linkage& l, const std::vector<double>& t_samples);
/// Throws NotPlanar for spatial linkages.
std::string export_svg(const Linkage& l, const std::vector<double>& t_samples);

}  // namespace mofa
