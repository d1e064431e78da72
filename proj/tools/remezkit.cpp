#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "remez/angles.hpp"
#include "remez/arcset.hpp"
#include "remez/closed_form.hpp"
#include "remez/comb.hpp"
#include "remez/errors.hpp"
#include "remez/json_io.hpp"
#include "remez/oracle.hpp"
#include "remez/polynomial.hpp"
#include "remez/regularity.hpp"

using namespace remez;
using nlohmann::json;

namespace {

constexpr double pi = 3.14159265358979323846;

/// Bad arguments discovered after CLI11 parsing (ranges, missing pairings,
/// unreadable input documents). Mapped to exit code 2 like CLI11's own errors.
struct usage_failure {
    std::string msg;
};

[[noreturn]] void usage(const std::string& msg) { throw usage_failure{msg}; }

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Input documents: unreadable files keep io_error (exit 3), anything that
/// fails to parse or validate is a usage problem (exit 2).
template <typename T>
T load_file(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return parse_json<T>(text, path);
    } catch (const error& e) {
        usage(e.what());
    }
}

void echo_config(json j) { std::cerr << j.dump() << "\n"; }

void emit_json(const json& j) { std::cout << j.dump() << "\n"; }

void emit_csv(const std::string& csv, const std::string& out_path) {
    if (out_path.empty())
        std::cout << csv;
    else
        write_text_file(out_path, csv);
}

double env_default_tol(double fallback) {
    const char* env = std::getenv("REMEZKIT_TOL");
    if (!env) return fallback;
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
        usage("REMEZKIT_TOL must be a positive number");
    return v;
}

ArcSet set_from_map(const CombMap& map) {
    std::vector<Arc> gaps;
    gaps.reserve(map.gaps().size());
    for (const GapTriple& g : map.gaps()) gaps.push_back({g.a, g.b});
    return ArcSet::from_gaps(gaps);
}

void check_gap_arg(double s, const char* name) {
    if (!(s > 0.0 && s < two_pi)) usage(std::string(name) + " must lie in (0, 2*pi)");
}

// ---------------------------------------------------------------------------

struct ConstantArgs {
    std::string kind;
    int n = 0;
    double s = 0.0;
    double a = 0.0;
    bool has_s = false;
    bool has_a = false;
};

int cmd_constant(const ConstantArgs& args, int seed) {
    if (args.n < 1) usage("-n must be at least 1");
    SharpConstant constant{};
    Envelopes env{};
    if (args.kind == "interval") {
        if (!args.has_a) usage("interval kind needs -a");
        if (!(args.a > 0.0 && args.a <= pi)) usage("-a must lie in (0, pi]");
        constant = remez_constant_interval(args.n, args.a);
        // Same constant as the trig kind at excluded length 2*pi - 2a, so the
        // envelopes are evaluated there.
        env = comparison_envelopes(2 * args.n, two_pi - 2.0 * args.a);
    } else {
        if (!args.has_s) usage(args.kind + " kind needs -s");
        check_gap_arg(args.s, "-s");
        if (args.kind == "algebraic") {
            constant = remez_constant_algebraic(args.n, args.s);
            env = comparison_envelopes(args.n, args.s);
        } else {
            constant = remez_constant_trig(args.n, args.s);
            env = comparison_envelopes(2 * args.n, args.s);
        }
    }
    echo_config({{"cmd", "constant"},
                 {"kind", args.kind},
                 {"n", args.n},
                 {"parameter", constant.parameter},
                 {"seed", seed}});
    json j = constant;
    j["envelopes"] = env;
    emit_json(j);
    return 0;
}

struct ExtremalArgs {
    int n = 0;
    double s = 0.0;
    double c0 = 0.0;
    double c1 = 0.0;
    int samples = 128;
    std::string out;
};

int cmd_extremal(const ExtremalArgs& args, int seed) {
    if (args.n < 1) usage("-n must be at least 1");
    check_gap_arg(args.s, "-s");
    if (args.samples < 2) usage("--samples must be at least 2");
    echo_config({{"cmd", "extremal"},
                 {"n", args.n},
                 {"s", args.s},
                 {"c0", args.c0},
                 {"c1", args.c1},
                 {"samples", args.samples},
                 {"out", args.out},
                 {"seed", seed}});
    CirclePolynomial p = extremal_coeffs(args.n, args.s, args.c0, args.c1);
    emit_json(p);
    std::string csv = "x,re,im,abs\n";
    for (int i = 0; i < args.samples; ++i) {
        const double x = two_pi * i / args.samples;
        const cdouble v = p.eval_angle(x);
        csv += fmt17(x) + "," + fmt17(v.real()) + "," + fmt17(v.imag()) + "," +
               fmt17(std::abs(v)) + "\n";
    }
    emit_csv(csv, args.out);
    return 0;
}

struct OracleArgs {
    int n = 0;
    std::string set_path;
    double c = 0.0;
    bool has_c = false;
    int gap = 0;
    bool has_gap = false;
    int order = 64;
    double density = 0.0;
    double tol = 1e-6;
    int rounds = 60;
};

int cmd_oracle(const OracleArgs& args, int seed) {
    if (args.n < 1) usage("-n must be at least 1");
    if (args.has_c == args.has_gap) usage("need exactly one of -c or --gap");
    OracleProblem prob;
    prob.n = args.n;
    prob.set = load_file<ArcSet>(args.set_path);
    prob.polygon_order = args.order;
    prob.grid_density = args.density;
    prob.tol = args.tol;
    prob.max_rounds = args.rounds;
    echo_config({{"cmd", "oracle"},
                 {"n", args.n},
                 {"set", args.set_path},
                 {"c", args.has_c ? json(args.c) : json()},
                 {"gap", args.has_gap ? json(args.gap) : json()},
                 {"order", args.order},
                 {"density", args.density},
                 {"tol", args.tol},
                 {"rounds", args.rounds},
                 {"seed", seed}});
    if (args.has_c) {
        prob.target_angle = args.c;
        emit_json(max_at_angle(prob));
    } else {
        GapMaxResult r = max_over_gap(prob, args.gap);
        emit_json({{"c_star", r.c_star}, {"value", r.value}, {"solution", r.solution}});
    }
    return 0;
}

struct VerifyArgs {
    std::string coeffs_path;
    std::string kind;
    std::string set_path;
};

int cmd_verify(const VerifyArgs& args, int seed) {
    const BoundKind kind =
        args.kind == "algebraic" ? BoundKind::algebraic : BoundKind::trigonometric;
    CirclePolynomial p = load_file<CirclePolynomial>(args.coeffs_path);
    echo_config({{"cmd", "verify"},
                 {"coeffs", args.coeffs_path},
                 {"kind", args.kind},
                 {"set", args.set_path},
                 {"seed", seed}});
    VerificationReport report;
    if (args.set_path.empty()) {
        report = check_remez(p, kind);
    } else {
        ArcSet claimed = load_file<ArcSet>(args.set_path);
        report = check_remez(p, kind, claimed);
    }
    emit_json(report);
    return report.remez_ok ? 0 : 1;
}

struct SweepArgs {
    int n_min = 1;
    int n_max = 1;
    double s_min = 0.0;
    double s_max = 0.0;
    int steps = 1;
    std::string out;
};

int cmd_sweep(const SweepArgs& args, int seed) {
    if (args.n_min < 1 || args.n_max < args.n_min) usage("need 1 <= --n-min <= --n-max");
    if (args.steps < 1) usage("--steps must be positive");
    check_gap_arg(args.s_min, "--s-min");
    check_gap_arg(args.s_max, "--s-max");
    if (args.s_max < args.s_min) usage("--s-max must be at least --s-min");
    echo_config({{"cmd", "sweep"},
                 {"n_min", args.n_min},
                 {"n_max", args.n_max},
                 {"s_min", args.s_min},
                 {"s_max", args.s_max},
                 {"steps", args.steps},
                 {"out", args.out},
                 {"seed", seed}});
    // Trig-kind constants; value columns overflow to inf for large n*s, the
    // log columns stay finite for plotting.
    std::string csv =
        "n,s,sharp,asymptotic,ganzburg,large_gap,log_sharp,log_ganzburg,log_large_gap\n";
    for (int n = args.n_min; n <= args.n_max; ++n) {
        for (int k = 0; k < args.steps; ++k) {
            const double s = args.steps == 1 ? args.s_min
                                             : args.s_min + (args.s_max - args.s_min) * k /
                                                                (args.steps - 1);
            const SharpConstant sharp = remez_constant_trig(n, s);
            const Envelopes env = comparison_envelopes(2 * n, s);
            csv += std::to_string(n) + "," + fmt17(s) + "," + fmt17(sharp.value) + "," +
                   fmt17(env.asymptotic) + "," + fmt17(env.ganzburg) + "," +
                   fmt17(env.large_gap) + "," + fmt17(sharp.log_value) + "," +
                   fmt17(env.log_ganzburg) + "," + fmt17(env.log_large_gap) + "\n";
        }
    }
    emit_csv(csv, args.out);
    return 0;
}

struct CombArgs {
    std::string action;
    std::string comb_path;
    std::string set_path;
    int n = 0;
    bool has_n = false;
    int slit = 0;
    double height = 0.0;
    double measure = 0.0;
    bool has_measure = false;
    int samples = 256;
    std::string out;
};

int cmd_comb(const CombArgs& args, int seed) {
    if (args.comb_path.empty() == args.set_path.empty())
        usage("need exactly one of --comb or --set");
    if (args.samples < 2) usage("--samples must be at least 2");

    CombDomain comb;
    std::optional<CombFit> fit; // solved lazily; set input always solves
    if (!args.comb_path.empty()) {
        comb = load_file<CombDomain>(args.comb_path);
    } else {
        if (!args.has_n) usage("--set input needs -n");
        if (args.n < 1) usage("-n must be at least 1");
    }
    echo_config({{"cmd", "comb"},
                 {"action", args.action},
                 {"comb", args.comb_path},
                 {"set", args.set_path},
                 {"n", args.has_n ? json(args.n) : json()},
                 {"slit", args.slit},
                 {"height", args.height},
                 {"measure", args.has_measure ? json(args.measure) : json()},
                 {"samples", args.samples},
                 {"out", args.out},
                 {"seed", seed}});

    // Everything after input parsing is comb-domain work; precondition and
    // degeneracy failures here are exit 5 material, solver breakdowns stay 4.
    try {
        if (!args.set_path.empty()) {
            ArcSet set = load_file<ArcSet>(args.set_path);
            fit = fit_comb_to_set(args.n, set);
            comb = fit->comb;
        }
        if (args.action == "map" || args.action == "extremal") {
            if (!fit) fit = fit_set_to_comb(comb);
            if (args.action == "map") {
                std::string csv = "x,re_theta,im_theta\n";
                for (int i = 0; i < args.samples; ++i) {
                    const double x = two_pi * i / args.samples;
                    const cdouble t = fit->map.map(cdouble(x, 0.0));
                    csv += fmt17(x) + "," + fmt17(t.real()) + "," + fmt17(t.imag()) + "\n";
                }
                emit_csv(csv, args.out);
            } else {
                emit_json(extremal_from_comb(fit->map, comb.n));
            }
        } else if (args.action == "raise") {
            RaiseResult r = raise_height(comb, args.slit, args.height);
            emit_json({{"comb", r.comb}, {"set", r.set}});
        } else if (args.action == "delete") {
            CombDomain rest = delete_slit(comb, args.slit);
            emit_json({{"comb", rest}, {"set", set_from_map(fit_set_to_comb(rest).map)}});
        } else if (args.action == "equalize") {
            if (!args.has_measure) usage("equalize needs --measure");
            if (!(args.measure > 0.0 && args.measure < two_pi))
                usage("--measure must lie in (0, 2*pi)");
            EqualizeResult r = equalize_measure(comb, args.measure);
            emit_json({{"increment", r.increment}, {"set", r.set}});
        }
    } catch (const solver_error&) {
        throw;
    } catch (const quadrature_error&) {
        throw;
    } catch (const comb_error&) {
        throw;
    } catch (const io_error&) {
        throw;
    } catch (const usage_failure&) {
        throw;
    } catch (const error& e) {
        // regularity_error, degenerate_error, and precondition errors: the
        // comb is not usable as requested.
        std::cerr << "comb: " << e.what() << "\n";
        return 5;
    }
    return 0;
}

struct ExtendArgs {
    int n = 0;
    std::string set_path;
    int gap = 0;
};

int cmd_extend(const ExtendArgs& args, int seed) {
    if (args.n < 1) usage("-n must be at least 1");
    ArcSet set = load_file<ArcSet>(args.set_path);
    echo_config({{"cmd", "extend"},
                 {"n", args.n},
                 {"set", args.set_path},
                 {"gap", args.gap},
                 {"seed", seed}});
    ExtensionResult ext = n_regular_extension(args.n, set, args.gap);
    const bool regular = sets_match(set, ext.extended, 1e-5);
    emit_json({{"extended", ext.extended},
               {"extended_measure", ext.extended.measure()},
               {"measure", set.measure()},
               {"regular", regular}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"remezkit: sharp Remez constants, extremal polynomials, and comb maps"};
    app.require_subcommand(1);

    bool degrees = false;
    int seed = 0;
    app.add_flag("--degrees", degrees, "interpret angle arguments as degrees");
    app.add_option("--seed", seed, "seed echoed in the config line (reserved for sampling)");

    ConstantArgs ca;
    auto* constant = app.add_subcommand("constant", "sharp constant and comparison envelopes");
    constant->add_option("--kind", ca.kind, "algebraic | trig | interval")
        ->required()
        ->check(CLI::IsMember({"algebraic", "trig", "interval"}));
    constant->add_option("-n", ca.n, "degree")->required();
    auto* ca_s = constant->add_option("-s", ca.s, "excluded arc length");
    auto* ca_a = constant->add_option("-a", ca.a, "interval half-length");

    ExtremalArgs ea;
    auto* extremal = app.add_subcommand("extremal", "extremal polynomial and samples");
    extremal->add_option("-n", ea.n, "degree")->required();
    extremal->add_option("-s", ea.s, "excluded arc length")->required();
    extremal->add_option("--c0", ea.c0, "peak angle");
    extremal->add_option("--c1", ea.c1, "phase offset");
    extremal->add_option("--samples", ea.samples, "CSV rows over [0, 2*pi)");
    extremal->add_option("--out", ea.out, "CSV destination (default stdout)");

    OracleArgs oa;
    auto* oracle = app.add_subcommand("oracle", "semi-infinite LP maximization over a set");
    oracle->add_option("-n", oa.n, "degree")->required();
    oracle->add_option("--set", oa.set_path, "band set JSON file")->required();
    auto* oa_c = oracle->add_option("-c", oa.c, "target angle");
    auto* oa_gap = oracle->add_option("--gap", oa.gap, "maximize over this gap");
    oracle->add_option("--order", oa.order, "modulus polygon order");
    oracle->add_option("--density", oa.density, "grid density (0 = automatic)");
    auto* oa_tol =
        oracle->add_option("--tol", oa.tol, "bracket tolerance (default REMEZKIT_TOL or 1e-6)");
    oracle->add_option("--rounds", oa.rounds, "exchange round limit");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "check a polynomial against the sharp bound");
    verify->add_option("--coeffs", va.coeffs_path, "polynomial JSON file")->required();
    verify->add_option("--kind", va.kind, "algebraic | trig")
        ->required()
        ->check(CLI::IsMember({"algebraic", "trig"}));
    verify->add_option("--set", va.set_path, "claimed bound set (default: own sublevel set)");

    SweepArgs wa;
    auto* sweep = app.add_subcommand("sweep", "constant and envelope grid as CSV");
    sweep->add_option("--n-min", wa.n_min, "first degree")->required();
    sweep->add_option("--n-max", wa.n_max, "last degree")->required();
    sweep->add_option("--s-min", wa.s_min, "first excluded length")->required();
    sweep->add_option("--s-max", wa.s_max, "last excluded length")->required();
    sweep->add_option("--steps", wa.steps, "number of s values")->required();
    sweep->add_option("--out", wa.out, "CSV destination (default stdout)");

    CombArgs ba;
    auto* comb = app.add_subcommand("comb", "comb map sampling and deformations");
    comb->add_option("--action", ba.action, "map | extremal | raise | delete | equalize")
        ->required()
        ->check(CLI::IsMember({"map", "extremal", "raise", "delete", "equalize"}));
    comb->add_option("--comb", ba.comb_path, "comb JSON file");
    comb->add_option("--set", ba.set_path, "band set JSON file (fitted with -n)");
    auto* ba_n = comb->add_option("-n", ba.n, "degree for --set input");
    comb->add_option("--slit", ba.slit, "slit index for raise/delete");
    comb->add_option("--height", ba.height, "height increment for raise");
    auto* ba_measure = comb->add_option("--measure", ba.measure, "target measure for equalize");
    comb->add_option("--samples", ba.samples, "map CSV rows over [0, 2*pi)");
    comb->add_option("--out", ba.out, "CSV destination (default stdout)");

    ExtendArgs xa;
    auto* extend = app.add_subcommand("extend", "n-regular extension and verdict");
    extend->add_option("-n", xa.n, "degree")->required();
    extend->add_option("--set", xa.set_path, "band set JSON file")->required();
    extend->add_option("--gap", xa.gap, "gap whose extension is constructed");

    // Let --degrees / --seed appear after the subcommand name too.
    for (CLI::App* sub : {constant, extremal, oracle, verify, sweep, comb, extend})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        const double rad = degrees ? pi / 180.0 : 1.0;
        if (constant->parsed()) {
            ca.has_s = ca_s->count() > 0;
            ca.has_a = ca_a->count() > 0;
            ca.s *= rad;
            ca.a *= rad;
            return cmd_constant(ca, seed);
        }
        if (extremal->parsed()) {
            ea.s *= rad;
            ea.c0 *= rad;
            ea.c1 *= rad;
            return cmd_extremal(ea, seed);
        }
        if (oracle->parsed()) {
            oa.has_c = oa_c->count() > 0;
            oa.has_gap = oa_gap->count() > 0;
            oa.c *= rad;
            if (oa_tol->count() == 0) oa.tol = env_default_tol(oa.tol);
            return cmd_oracle(oa, seed);
        }
        if (verify->parsed()) return cmd_verify(va, seed);
        if (sweep->parsed()) {
            wa.s_min *= rad;
            wa.s_max *= rad;
            return cmd_sweep(wa, seed);
        }
        if (comb->parsed()) {
            ba.has_n = ba_n->count() > 0;
            ba.has_measure = ba_measure->count() > 0;
            return cmd_comb(ba, seed);
        }
        if (extend->parsed()) return cmd_extend(xa, seed);
        return 2;
    } catch (const usage_failure& u) {
        std::cerr << u.msg << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const regularity_error& e) {
        std::cerr << e.what() << "\n";
        return 5;
    } catch (const error& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
