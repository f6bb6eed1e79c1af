#include "mofa/io.hpp"

#include "mofa/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace mofa::io {

namespace {

using json = nlohmann::ordered_json;

json parse(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

template <class F>
auto guarded(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

double number(const json& v)
{
    if (!v.is_number()) throw Error(ErrorKind::ParseError, "expected a number, got " + v.dump());
    return v.get<double>();
}

template <std::size_t N>
std::array<double, N> tuple(const json& v)
{
    if (!v.is_array() || v.size() != N)
        throw Error(ErrorKind::ParseError, "expected an array of " + std::to_string(N) + " numbers, got " + v.dump());
    std::array<double, N> a{};
    for (std::size_t i = 0; i < N; ++i) a[i] = number(v[i]);
    return a;
}

DualQuaternion dq(const json& v) { return DualQuaternion::from_array(tuple<8>(v)); }

json dq_json(const DualQuaternion& h) { return h.to_array(); }

const json& coeffs(const json& v)
{
    if (!v.is_object() || !v.contains("coeffs") || !v["coeffs"].is_array())
        throw Error(ErrorKind::ParseError, "expected an object with a \"coeffs\" array");
    return v["coeffs"];
}

RealPoly real_poly(const json& v)
{
    std::vector<double> c;
    for (const auto& x : coeffs(v)) c.push_back(number(x));
    return RealPoly(std::move(c));
}

json real_poly_json(const RealPoly& p)
{
    json c = json::array();
    for (double x : p.coeffs()) c.push_back(x);
    return {{"coeffs", c}};
}

const json& field(const json& v, const char* key)
{
    if (!v.is_object() || !v.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field \"") + key + "\"");
    return v[key];
}

std::string kind_name(const DualQuaternion& h)
{
    try {
        return is_rotation(classify_generator(h)) ? "Rotation" : "Translation";
    } catch (const Error&) {
        return "Unclassified";
    }
}

FactorStatus status_from(const std::string& s)
{
    for (auto st : {FactorStatus::Success, FactorStatus::NoFactorization, FactorStatus::NeedsMultiplier})
        if (to_string(st) == s) return st;
    throw Error(ErrorKind::ParseError, "unknown status " + s);
}

}  // namespace

DualQuaternion read_dual_quaternion(const std::string& text) { return dq(parse(text)); }

std::string write_dual_quaternion(const DualQuaternion& h) { return dq_json(h).dump(); }

DQPoly read_dq_poly(const std::string& text)
{
    const json v = parse(text);
    std::vector<DualQuaternion> c;
    for (const auto& x : coeffs(v)) c.push_back(dq(x));
    return DQPoly(std::move(c));
}

std::string write_dq_poly(const DQPoly& c)
{
    json a = json::array();
    for (const auto& h : c.coeffs()) a.push_back(dq_json(h));
    return json{{"coeffs", a}}.dump(2);
}

RealPoly read_real_poly(const std::string& text) { return real_poly(parse(text)); }

std::string write_real_poly(const RealPoly& p) { return real_poly_json(p).dump(); }

QuatPoly read_quat_poly(const std::string& text)
{
    const json v = parse(text);
    std::vector<Quaternion> c;
    for (const auto& x : coeffs(v)) {
        const auto a = tuple<4>(x);
        c.emplace_back(a[0], a[1], a[2], a[3]);
    }
    return QuatPoly(std::move(c));
}

std::vector<DualQuaternion> read_poses(const std::string& text)
{
    const json v = parse(text);
    const json& list = v.is_object() ? field(v, "poses") : v;
    if (!list.is_array()) throw Error(ErrorKind::ParseError, "expected an array of poses");
    std::vector<DualQuaternion> out;
    for (const auto& x : list) out.push_back(dq(x));
    return out;
}

FlipInput read_flip_input(const std::string& text)
{
    const json v = parse(text);
    return {dq(field(v, "m_prev")), dq(field(v, "h"))};
}

std::string write_flip(const FlipResult& f) { return json{{"k", dq_json(f.k)}, {"m", dq_json(f.m)}}.dump(2); }

CurveInput read_curve(const std::string& text)
{
    const json v = parse(text);
    const json& num = field(v, "numerator");
    if (!num.is_array() || num.size() != 3) throw Error(ErrorKind::ParseError, "numerator must list three polynomials");
    CurveInput c;
    for (std::size_t i = 0; i < 3; ++i) c.numerator[i] = real_poly(num[i]);
    c.denominator = real_poly(field(v, "denominator"));
    return c;
}

std::string write_report(const FactorizationReport& r)
{
    json fs = json::array();
    for (const auto& f : r.factorizations) {
        json factors = json::array(), kinds = json::array();
        for (const auto& h : f.factors) {
            factors.push_back(dq_json(h));
            kinds.push_back(kind_name(h));
        }
        fs.push_back({{"multiplier", real_poly_json(f.multiplier)}, {"factors", factors}, {"kinds", kinds}});
    }
    const RealPoly mult = r.factorizations.empty() ? RealPoly{1.0} : r.factorizations.front().multiplier;
    return json{{"status", to_string(r.status)},
                {"multiplier", real_poly_json(mult)},
                {"factorizations", fs},
                {"diagnostics", r.diagnostics}}
        .dump(2);
}

FactorizationReport read_report(const std::string& text)
{
    const json v = parse(text);
    return guarded([&] {
        FactorizationReport r;
        r.status = status_from(field(v, "status").get<std::string>());
        for (const auto& f : field(v, "factorizations")) {
            Factorization out;
            out.multiplier = real_poly(field(f, "multiplier"));
            for (const auto& h : field(f, "factors")) out.factors.push_back(dq(h));
            r.factorizations.push_back(std::move(out));
        }
        for (const auto& d : field(v, "diagnostics")) r.diagnostics.push_back(d.get<std::string>());
        return r;
    });
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    out << text;
}

}  // namespace mofa::io
