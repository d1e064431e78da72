#include "remez/json_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "remez/errors.hpp"

namespace remez {

using nlohmann::json;

namespace {

const json& member(const json& j, const char* record, const char* key) {
    if (!j.is_object())
        throw error(std::string(record) + " json: expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw error(std::string(record) + " json: missing field \"" + key + "\"");
    return *it;
}

double as_number(const json& j, const char* record, const char* key) {
    if (!j.is_number())
        throw error(std::string(record) + " json: \"" + key + "\" must be a number");
    return j.get<double>();
}

int as_int(const json& j, const char* record, const char* key) {
    if (!j.is_number_integer())
        throw error(std::string(record) + " json: \"" + key + "\" must be an integer");
    return j.get<int>();
}

json pair_array(const std::vector<cdouble>& values) {
    json arr = json::array();
    for (cdouble a : values) arr.push_back({a.real(), a.imag()});
    return arr;
}

json gap_array(const ArcSet& set) {
    json arr = json::array();
    for (const Arc& g : set.gaps()) arr.push_back({g.start, g.end});
    return arr;
}

const char* kind_name(ConstantKind kind) {
    switch (kind) {
    case ConstantKind::algebraic: return "algebraic";
    case ConstantKind::trig: return "trig";
    case ConstantKind::interval: return "interval";
    }
    return "unknown";
}

} // namespace

void to_json(json& j, const ArcSet& set) {
    j = json{{"gaps", gap_array(set)}};
    if (set.is_empty()) j["empty"] = true;
}

void from_json(const json& j, ArcSet& set) {
    if (!j.is_object()) throw error("arc set json: expected an object");
    if (j.contains("empty") && j.at("empty").is_boolean() && j.at("empty").get<bool>()) {
        set = ArcSet::empty_set();
        return;
    }
    const json& gaps = member(j, "arc set", "gaps");
    if (!gaps.is_array()) throw error("arc set json: \"gaps\" must be an array");
    std::vector<Arc> raw;
    raw.reserve(gaps.size());
    for (const json& e : gaps) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw error("arc set json: every gap must be a [start, end] number pair");
        raw.push_back({e[0].get<double>(), e[1].get<double>()});
    }
    set = ArcSet::from_gaps(raw);
}

void to_json(json& j, const CirclePolynomial& p) {
    j = json{{"n", p.degree()}, {"coeffs", pair_array(p.coeffs())}};
}

void from_json(const json& j, CirclePolynomial& p) {
    const int n = as_int(member(j, "polynomial", "n"), "polynomial", "n");
    if (n < 0) throw error("polynomial json: \"n\" must be nonnegative");
    const json& coeffs = member(j, "polynomial", "coeffs");
    if (!coeffs.is_array() || coeffs.size() != static_cast<size_t>(n) + 1)
        throw error("polynomial json: \"coeffs\" must hold exactly n + 1 pairs");
    std::vector<cdouble> a;
    a.reserve(coeffs.size());
    for (const json& e : coeffs) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw error("polynomial json: every coefficient must be a [re, im] pair");
        a.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    p = CirclePolynomial(std::move(a), /*allow_zero_leading=*/true);
}

void to_json(json& j, const CombDomain& comb) {
    json slits = json::array();
    for (const CombSlit& s : comb.slits)
        slits.push_back({{"base", s.base}, {"height", s.height}});
    j = json{{"n", comb.n}, {"slits", std::move(slits)}};
}

void from_json(const json& j, CombDomain& comb) {
    comb.n = as_int(member(j, "comb", "n"), "comb", "n");
    const json& slits = member(j, "comb", "slits");
    if (!slits.is_array()) throw error("comb json: \"slits\" must be an array");
    comb.slits.clear();
    comb.slits.reserve(slits.size());
    for (const json& e : slits)
        comb.slits.push_back({as_number(member(e, "comb slit", "base"), "comb slit", "base"),
                              as_number(member(e, "comb slit", "height"), "comb slit", "height")});
}

void to_json(json& j, const OracleSolution& sol) {
    j = json{{"lower", sol.lower},
             {"upper", sol.upper},
             {"coeffs", pair_array(sol.coefficients.coeffs())},
             {"active", sol.active_points},
             {"iters", sol.iterations}};
}

void to_json(json& j, const VerificationReport& report) {
    j = json{{"sup", report.sup_norm},
             {"arg", report.sup_arg},
             {"s", report.excluded_length},
             {"constant", report.constant_used},
             {"ok", report.remez_ok},
             {"sublevel_gaps", gap_array(report.sublevel)}};
}

void to_json(json& j, const SharpConstant& constant) {
    j = json{{"kind", kind_name(constant.kind)},
             {"n", constant.n},
             {"parameter", constant.parameter},
             {"value", constant.value},
             {"log_value", constant.log_value}};
}

void to_json(json& j, const Envelopes& env) {
    j = json{{"asymptotic", env.asymptotic},
             {"erdelyi", env.erdelyi},
             {"ganzburg", env.ganzburg},
             {"large_gap", env.large_gap},
             {"log_erdelyi", env.log_erdelyi},
             {"log_ganzburg", env.log_ganzburg},
             {"log_large_gap", env.log_large_gap}};
}

template <typename T>
T parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text).get<T>();
    } catch (const std::exception& e) {
        throw error(what + ": " + e.what());
    }
}

template ArcSet parse_json<ArcSet>(const std::string&, const std::string&);
template CirclePolynomial parse_json<CirclePolynomial>(const std::string&, const std::string&);
template CombDomain parse_json<CombDomain>(const std::string&, const std::string&);

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("read failed: " + path);
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << text;
    out.flush();
    if (!out) throw io_error("write failed: " + path);
}

} // namespace remez
