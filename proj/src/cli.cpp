#include "mofa/cli.hpp"

#include "mofa/error.hpp"
#include "mofa/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>

namespace mofa::cli {

namespace {

using json = nlohmann::ordered_json;

json vec_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

json poly_json(const RealPoly& p) { return {{"coeffs", p.coeffs()}}; }

// Domain failures go to stdout as JSON so scripts can inspect them.
int domain_failure(std::ostream& out, const Error& e)
{
    out << json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump(2) << '\n';
    return 1;
}

struct Context {
    Config cfg;
    std::string out_dir;
    std::ostream& out;
    std::ostream& err;

    FactorOptions factor_options(bool all) const
    {
        FactorOptions opt;
        opt.node_budget = cfg.backtrack_budget;
        opt.family_samples = cfg.family_samples;
        opt.stop_at_first = !all;
        return opt;
    }

    std::vector<double> samples(const Linkage& l) const
    {
        return default_samples(l, cfg.sample_count, cfg.sample_lo, cfg.sample_hi);
    }

    void emit(const std::string& name, const std::string& text) const
    {
        if (out_dir.empty()) {
            out << text;
            if (!text.empty() && text.back() != '\n') out << '\n';
            return;
        }
        std::filesystem::create_directories(out_dir);
        io::write_file((std::filesystem::path(out_dir) / name).string(), text);
    }
};

MotionPolynomial read_motion(const Context& ctx, const std::string& path)
{
    return validate_motion(io::read_dq_poly(io::read_file(path)), ctx.cfg.tolerance);
}

int cmd_validate(const Context& ctx, const std::string& path)
{
    const DQPoly c = io::read_dq_poly(io::read_file(path));
    std::optional<MotionPolynomial> checked;
    try {
        checked = validate_motion(c, ctx.cfg.tolerance);
    } catch (const Error& e) {
        ctx.out << json{{"valid", false}, {"error", to_string(e.kind())}, {"message", e.what()}}.dump(2) << '\n';
        return 1;
    }
    const MotionPolynomial& m = *checked;
    const RealPoly g = max_real_factor(m.poly());
    json r{{"valid", true},
           {"degree", m.degree()},
           {"monic", m.is_monic()},
           {"norm", poly_json(m.norm())},
           {"norm_text", to_string(m.norm())},
           {"bounded", is_bounded(m)},
           {"real_factor", poly_json(g)},
           {"real_factor_text", to_string(g)},
           {"generic", g.degree() <= 0}};
    ctx.out << r.dump(2) << '\n';
    return 0;
}

struct FactorFlags {
    bool all = false;
    int multiplier_deg = -2;
    std::string right_h;
};

int cmd_factor(const Context& ctx, const std::string& path, const FactorFlags& f)
{
    MotionPolynomial c = read_motion(ctx, path);
    std::vector<std::string> notes;
    if (!c.is_monic(ctx.cfg.tolerance)) {
        c = make_monic(c, ctx.cfg.tolerance);
        notes.push_back("input right-multiplied by the inverse of its leading coefficient");
    }
    const FactorOptions opt = ctx.factor_options(f.all);
    FactorizationReport rep;
    if (!f.right_h.empty()) {
        rep = right_multiply_and_factor(c, io::read_quat_poly(io::read_file(f.right_h)), opt);
    } else if (f.multiplier_deg >= -1) {
        rep = factor_bounded_with_multiplier(c, f.multiplier_deg, opt);
        if (!f.all && rep.factorizations.size() > 1) rep.factorizations.resize(1);
    } else if (max_real_factor(c.poly()).degree() <= 0) {
        rep.factorizations = all_factorizations(c);
        if (!f.all && rep.factorizations.size() > 1) rep.factorizations.resize(1);
        rep.status = rep.factorizations.empty() ? FactorStatus::NoFactorization : FactorStatus::Success;
        rep.diagnostics.push_back("generic: " + std::to_string(rep.factorizations.size()) + " factorization(s) reported");
    } else {
        rep = factor_with_backtracking(c, opt);
    }
    rep.diagnostics.insert(rep.diagnostics.begin(), notes.begin(), notes.end());
    ctx.emit("report.json", io::write_report(rep));
    if (!ctx.out_dir.empty()) ctx.out << to_string(rep.status) << '\n';
    return rep.status == FactorStatus::Success ? 0 : 1;
}

int cmd_synth3(const Context& ctx, const std::string& path)
{
    const auto raw = io::read_poses(io::read_file(path));
    if (raw.size() != 3) throw Error(ErrorKind::ParseError, "expected exactly three poses, got " + std::to_string(raw.size()));
    std::vector<Pose> poses;
    for (const auto& h : raw) poses.push_back(normalize_pose(h, ctx.cfg.tolerance));
    const auto b = synthesize_bennett(poses[0], poses[1], poses[2], ctx.cfg.tolerance);
    Linkage l = bennett_linkage(b);
    l.notes.push_back("coupler frame " + io::write_dual_quaternion(b.frame));
    ctx.emit("linkage.json", export_json(l));
    if (!ctx.out_dir.empty()) ctx.emit("coupler_motion.json", io::write_dq_poly(b.coupler_motion.poly()));
    return 0;
}

int cmd_flip(const Context& ctx, const std::string& path)
{
    const auto in = io::read_flip_input(io::read_file(path));
    ctx.emit("flip.json", io::write_flip(bennett_flip(in.m_prev, in.h, ctx.cfg.tolerance)));
    return 0;
}

std::string export_as(const Context& ctx, const Linkage& l, const std::string& format)
{
    if (format == "json") return export_json(l);
    if (format == "csv") return export_csv(l, ctx.samples(l));
    return export_svg(l, ctx.samples(l));
}

int cmd_curve(const Context& ctx, const std::string& path, const std::string& m0_text, const std::vector<std::string>& formats)
{
    const auto curve = io::read_curve(io::read_file(path));
    const DualQuaternion m0 = m0_text.empty() ? default_m0() : io::read_dual_quaternion(m0_text);
    const auto res = kempe_linkage_for_curve(curve.numerator, curve.denominator, m0, ctx.factor_options(false));
    ctx.out << export_json(res.linkage) << '\n';
    const std::string dir = ctx.out_dir.empty() ? "." : ctx.out_dir;
    std::filesystem::create_directories(dir);
    for (const auto& f : formats) {
        const auto file = (std::filesystem::path(dir) / ((f == "json" ? "linkage." : "trajectory.") + f)).string();
        io::write_file(file, export_as(ctx, res.linkage, f));
        ctx.err << "wrote " << file << '\n';
    }
    return 0;
}

int cmd_sample(const Context& ctx, const std::string& path)
{
    const Linkage l = import_json(io::read_file(path));
    const auto ts = ctx.samples(l);
    json samples = json::array();
    for (double t : ts) {
        const auto s = sample_configuration(l, t, ctx.cfg.tolerance);
        json joints = json::object();
        for (const auto& [id, p] : s.joint_positions) joints[id] = vec_json(p);
        json row{{"t", t}, {"loop_residual", s.loop_residual}, {"joints", joints}};
        if (l.tracer) row["tracer"] = vec_json(act_on_point(s.link_displacements.at(l.tracer->link), l.tracer->point));
        samples.push_back(row);
    }
    const auto rig = rigidity_check(l, ts);
    json r{{"samples", samples},
           {"rigidity", {{"max_deviation", rig.max_deviation}, {"worst", rig.worst}, {"worst_loop_residual", rig.worst_loop_residual}}}};
    ctx.emit("samples.json", r.dump(2));
    return 0;
}

int cmd_export(const Context& ctx, const std::string& path, const std::string& format)
{
    const Linkage l = import_json(io::read_file(path));
    ctx.emit("linkage." + format, export_as(ctx, l, format));
    return 0;
}

std::string config_path_from_env()
{
    const char* p = std::getenv("MOFA_CONFIG");
    return p ? std::string(p) : std::string();
}

}  // namespace

Config read_config(const std::string& text, Config base)
{
    json v;
    try {
        v = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("config: ") + e.what());
    }
    if (!v.is_object()) throw Error(ErrorKind::ParseError, "config must be a JSON object");
    try {
        if (v.contains("tolerance")) base.tolerance = v["tolerance"].get<double>();
        if (v.contains("budget")) base.backtrack_budget = v["budget"].get<int>();
        if (v.contains("family_samples")) base.family_samples = v["family_samples"].get<int>();
        if (v.contains("samples")) base.sample_count = v["samples"].get<int>();
        if (v.contains("range")) {
            base.sample_lo = v["range"].at(0).get<double>();
            base.sample_hi = v["range"].at(1).get<double>();
        }
        if (v.contains("seed")) base.seed = v["seed"].get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("config: ") + e.what());
    }
    return base;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Motion polynomial factorization and linkage synthesis", "mofa"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path = config_path_from_env(), out_dir;
    double tol = 0;
    int budget = 0, samples = 0;
    std::uint64_t seed = 0;
    auto* o_tol = app.add_option("--tol", tol, "numerical tolerance for zero tests")->check(CLI::PositiveNumber);
    auto* o_budget = app.add_option("--budget", budget, "backtracking node budget")->check(CLI::PositiveNumber);
    auto* o_samples = app.add_option("--samples", samples, "number of parameter samples")->check(CLI::PositiveNumber);
    auto* o_seed = app.add_option("--seed", seed, "random seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--config", config_path, "JSON config file (default: $MOFA_CONFIG)");

    std::string input;
    std::function<int(const Context&)> action;

    auto* validate = app.add_subcommand("validate", "check a motion polynomial");
    validate->add_option("input", input, "DQPoly JSON file")->required();
    validate->callback([&] { action = [&](const Context& c) { return cmd_validate(c, input); }; });

    FactorFlags ff;
    auto* factor = app.add_subcommand("factor", "factor a motion polynomial");
    factor->add_option("input", input, "DQPoly JSON file")->required();
    factor->add_flag("--all", ff.all, "report every factorization found");
    auto* o_mult = factor->add_option("--multiplier-deg", ff.multiplier_deg, "search a real multiplier of degree <= N")
                       ->check(CLI::NonNegativeNumber);
    auto* o_right = factor->add_option("--right-H", ff.right_h, "QuatPoly JSON file H; factor C H");
    o_mult->excludes(o_right);
    factor->callback([&] { action = [&](const Context& c) { return cmd_factor(c, input, ff); }; });

    auto* synth3 = app.add_subcommand("synth3", "Bennett linkage through three poses");
    synth3->add_option("input", input, "JSON file with three pose 8-tuples")->required();
    synth3->callback([&] { action = [&](const Context& c) { return cmd_synth3(c, input); }; });

    auto* flip = app.add_subcommand("flip", "Bennett flip of two rotation factors");
    flip->add_option("input", input, "JSON file {m_prev, h}")->required();
    flip->callback([&] { action = [&](const Context& c) { return cmd_flip(c, input); }; });

    std::string m0;
    std::vector<std::string> formats;
    auto* curve = app.add_subcommand("curve", "revolute linkage drawing a bounded rational curve");
    curve->add_option("input", input, "curve JSON file {numerator, denominator}")->required();
    curve->add_option("--m0", m0, "first auxiliary rotation as an 8-tuple JSON array");
    curve->add_option("--export", formats, "write linkage.json / trajectory.svg / trajectory.csv")
        ->check(CLI::IsMember({"svg", "json", "csv"}));
    curve->callback([&] { action = [&](const Context& c) { return cmd_curve(c, input, m0, formats); }; });

    auto* sample = app.add_subcommand("sample", "sample configurations of a linkage");
    sample->add_option("input", input, "linkage JSON file")->required();
    sample->callback([&] { action = [&](const Context& c) { return cmd_sample(c, input); }; });

    std::string format = "json";
    auto* exp = app.add_subcommand("export", "convert a linkage to json, svg or csv");
    exp->add_option("input", input, "linkage JSON file")->required();
    exp->add_option("--format", format, "output format")->check(CLI::IsMember({"svg", "json", "csv"}));
    exp->callback([&] { action = [&](const Context& c) { return cmd_export(c, input, format); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        Config cfg;
        if (!config_path.empty()) cfg = read_config(io::read_file(config_path));
        if (*o_tol) cfg.tolerance = tol;
        if (*o_budget) cfg.backtrack_budget = budget;
        if (*o_samples) cfg.sample_count = samples;
        if (*o_seed) cfg.seed = seed;
        if (!(cfg.tolerance > 0) || cfg.backtrack_budget <= 0 || cfg.sample_count <= 0) {
            err << "invalid configuration: tolerance, budget and samples must be positive\n";
            return 2;
        }
        return action(Context{cfg, out_dir, out, err});
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) {
            err << e.what() << '\n';
            return 2;
        }
        return domain_failure(out, e);
    } catch (const std::filesystem::filesystem_error& e) {
        err << e.what() << '\n';
        return 2;
    }
}

}  // namespace mofa::cli
