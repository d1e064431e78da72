#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "remez/angles.hpp"
#include "remez/arcset.hpp"
#include "remez/closed_form.hpp"
#include "remez/json_io.hpp"

using namespace remez;
using nlohmann::json;

namespace {

constexpr double pi = 3.14159265358979323846;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::string text = read_text_file(path);
    std::remove(path.c_str());
    return text;
}

/// Run the tool through the shell; `env` is a prefix like "REMEZKIT_TOL=1e-4 ".
RunResult run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const std::string tag = std::to_string(++counter);
    const std::string out_path = "/tmp/remez_cli_" + tag + ".out";
    const std::string err_path = "/tmp/remez_cli_" + tag + ".err";
    const std::string cmd =
        env + REMEZKIT_BIN " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::string write_doc(const char* name, const json& j) {
    const std::string path = std::string("/tmp/remez_cli_") + name + ".json";
    write_text_file(path, j.dump());
    return path;
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
    std::vector<std::vector<double>> rows;
    size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (header) { // skip the column names
            header = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<double> row;
        size_t field = 0;
        while (field <= line.size()) {
            size_t comma = line.find(',', field);
            if (comma == std::string::npos) comma = line.size();
            row.push_back(std::strtod(line.c_str() + field, nullptr));
            field = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string single_gap_file() {
    return write_doc("single", json(ArcSet::from_gaps({{-0.5 * pi, 0.5 * pi}})));
}

} // namespace

TEST_CASE("constant subcommand reproduces the closed-form values") {
    RunResult alg = run_cli("constant --kind algebraic -n 2 -s 3.14159265");
    REQUIRE(alg.code == 0);
    json j = json::parse(alg.out);
    CHECK(j["value"].get<double>() == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(j["envelopes"].contains("ganzburg"));
    CHECK(j["envelopes"].contains("large_gap"));

    RunResult trig = run_cli("constant --kind trig -n 1 -s 3.14159265");
    REQUIRE(trig.code == 0);
    CHECK(json::parse(trig.out)["value"].get<double>() ==
          doctest::Approx(3.0).epsilon(1e-6));

    RunResult itv = run_cli("constant --kind interval -n 1 -a 1.5707963");
    REQUIRE(itv.code == 0);
    CHECK(json::parse(itv.out)["value"].get<double>() ==
          doctest::Approx(3.0).epsilon(1e-5));
}

TEST_CASE("constant rejects bad arguments with exit 2") {
    CHECK(run_cli("constant --kind algebraic -n 2 -s -1").code == 2);
    CHECK(run_cli("constant --kind algebraic -n 2 -s 7.0").code == 2);
    CHECK(run_cli("constant --kind bogus -n 2 -s 1").code == 2);
    CHECK(run_cli("constant --kind algebraic -n 0 -s 1").code == 2);
    CHECK(run_cli("constant --kind interval -n 2 -s 1").code == 2); // needs -a
    CHECK(run_cli("constant --kind trig -n 2 -a 1").code == 2);     // needs -s
    CHECK(run_cli("nonsense").code == 2);
}

TEST_CASE("extremal emits matching coefficients and csv samples") {
    const std::string csv_path = "/tmp/remez_cli_extremal.csv";
    RunResult r = run_cli("extremal -n 2 -s 3.141592653589793 --samples 8 --out " + csv_path);
    REQUIRE(r.code == 0);
    CirclePolynomial p = parse_json<CirclePolynomial>(r.out, "cli coeffs");
    CirclePolynomial ref = extremal_coeffs(2, pi);
    REQUIRE(p.degree() == 2);
    for (int k = 0; k <= 2; ++k)
        CHECK(std::abs(p.coeffs()[k] - ref.coeffs()[k]) < 1e-12);

    auto rows = csv_rows(slurp(csv_path));
    REQUIRE(rows.size() == 8);
    REQUIRE(rows[0].size() == 4);
    CHECK(rows[0][0] == 0.0);
    CHECK(rows[0][3] == doctest::Approx(3.0).epsilon(1e-9)); // peak value at x = 0

    // A pure phase offset c1 changes coefficients but no modulus sample.
    RunResult shifted = run_cli(
        "extremal -n 2 -s 3.141592653589793 --c1 3.141592653589793 --samples 8 --out " +
        csv_path);
    REQUIRE(shifted.code == 0);
    auto rows2 = csv_rows(slurp(csv_path));
    REQUIRE(rows2.size() == rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        CHECK(rows2[i][3] == doctest::Approx(rows[i][3]).epsilon(1e-12));

    // Degree 1: both coefficients equal sec(s/4)/2.
    RunResult one = run_cli("extremal -n 1 -s 3.141592653589793 --samples 2");
    REQUIRE(one.code == 0);
    const std::string first_line = one.out.substr(0, one.out.find('\n'));
    CirclePolynomial p1 = parse_json<CirclePolynomial>(first_line, "cli coeffs");
    const double half_sec = 0.5 / std::cos(pi / 4.0);
    CHECK(std::abs(p1.coeffs()[0] - cdouble(half_sec, 0.0)) < 1e-12);
    CHECK(std::abs(p1.coeffs()[1] - cdouble(half_sec, 0.0)) < 1e-12);
}

TEST_CASE("oracle subcommand brackets the sharp value") {
    RunResult r = run_cli("oracle -n 2 --set " + single_gap_file() + " -c 0");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    const double lower = j["lower"].get<double>(), upper = j["upper"].get<double>();
    CHECK(lower <= 3.0 * (1.0 + 1e-9));
    CHECK(upper >= 3.0 * (1.0 - 1e-9));
    CHECK(upper / lower <= 1.002);
    CHECK(j["iters"].get<int>() >= 1);
    REQUIRE(j["coeffs"].size() == 3);

    // Full circle: value 1, certified to the polygon slack 1/cos(pi/order).
    const std::string full = write_doc("full", json(ArcSet()));
    RunResult fc = run_cli("oracle -n 3 --set " + full + " -c 1.0 --order 2048");
    REQUIRE(fc.code == 0);
    json jf = json::parse(fc.out);
    CHECK(jf["upper"].get<double>() == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(jf["lower"].get<double>() == doctest::Approx(1.0).epsilon(1e-5));

    // Two gaps of total length pi cannot beat the single-arc constant.
    const std::string two = write_doc(
        "two", json(ArcSet::from_gaps({{-0.6, 0.6}, {2.0, 2.0 + pi - 1.2}})));
    RunResult tg = run_cli("oracle -n 2 --set " + two + " --gap 0");
    REQUIRE(tg.code == 0);
    CHECK(json::parse(tg.out)["value"].get<double>() <= 3.0 * (1.0 + 1e-3));
}

TEST_CASE("bad oracle invocations use the documented exit codes") {
    CHECK(run_cli("oracle -n 2 --set /tmp/remez_cli_does_not_exist.json -c 0").code == 3);
    const std::string junk = "/tmp/remez_cli_junk.json";
    write_text_file(junk, "{not json");
    CHECK(run_cli("oracle -n 2 --set " + junk + " -c 0").code == 2);
    const std::string single = single_gap_file();
    CHECK(run_cli("oracle -n 2 --set " + single + " -c 0 --gap 0").code == 2);
    CHECK(run_cli("oracle -n 2 --set " + single).code == 2);
    CHECK(run_cli("oracle -n 0 --set " + single + " -c 0").code == 2);
    std::remove(junk.c_str());
}

TEST_CASE("verify verdict drives the exit status") {
    const std::string good = write_doc("good", json(extremal_coeffs(2, pi)));
    RunResult ok = run_cli("verify --coeffs " + good + " --kind algebraic");
    REQUIRE(ok.code == 0);
    json jok = json::parse(ok.out);
    CHECK(jok["ok"] == true);
    CHECK(jok["sup"].get<double>() == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(jok["s"].get<double>() == doctest::Approx(pi).epsilon(1e-6));

    // Scaled by 1.01 it no longer is bounded by 1 on the claimed band set.
    RunResult scaled = run_cli("verify --coeffs " +
                               write_doc("scaled", json(extremal_coeffs(2, pi).scaled(1.01))) +
                               " --kind algebraic --set " +
                               write_doc("band", json(ArcSet::from_gaps({{-0.5 * pi, 0.5 * pi}}))));
    REQUIRE(scaled.code == 1);
    json jsc = json::parse(scaled.out);
    CHECK(jsc["ok"] == false);
    CHECK(jsc["sup"].get<double>() == doctest::Approx(3.03).epsilon(1e-9));

    const std::string half = write_doc("half", json::parse(R"({"n":0,"coeffs":[[0.5,0]]})"));
    RunResult hc = run_cli("verify --coeffs " + half + " --kind algebraic");
    REQUIRE(hc.code == 0);
    json jh = json::parse(hc.out);
    CHECK(jh["ok"] == true);
    CHECK(jh["s"] == 0.0);
    CHECK(jh["constant"] == 1.0);
}

TEST_CASE("sweep grid carries constants below their envelopes") {
    RunResult cell = run_cli("sweep --n-min 1 --n-max 1 --s-min 3.141592653589793 "
                             "--s-max 3.141592653589793 --steps 1");
    REQUIRE(cell.code == 0);
    auto one = csv_rows(cell.out);
    REQUIRE(one.size() == 1);
    CHECK(one[0][0] == 1.0);
    CHECK(one[0][2] == doctest::Approx(3.0).epsilon(1e-12));

    RunResult grid = run_cli("sweep --n-min 1 --n-max 3 --s-min 0.3 --s-max 1.5 --steps 4");
    REQUIRE(grid.code == 0);
    auto rows = csv_rows(grid.out);
    REQUIRE(rows.size() == 12);
    for (const auto& row : rows) {
        CHECK(row[2] > 1.0);               // sharp
        CHECK(row[2] <= row[4] * (1.0 + 1e-12)); // ganzburg envelope, s <= pi/2
        CHECK(row[6] == doctest::Approx(std::log(row[2])).epsilon(1e-9));
    }
    CHECK(run_cli("sweep --n-min 2 --n-max 1 --s-min 1 --s-max 2 --steps 2").code == 2);
    CHECK(run_cli("sweep --n-min 1 --n-max 1 --s-min 1 --s-max 2 --steps 0").code == 2);
}

TEST_CASE("comb actions synthesize, deform, and refuse improper requests") {
    const double h0 = gap_to_height(pi);
    const std::string comb1 =
        write_doc("comb1", {{"n", 2}, {"slits", {{{"base", 0.0}, {"height", h0}}}}});

    RunResult ext = run_cli("comb --action extremal --comb " + comb1);
    REQUIRE(ext.code == 0);
    CirclePolynomial p = parse_json<CirclePolynomial>(ext.out, "comb coeffs");
    CirclePolynomial ref = extremal_coeffs(2, pi);
    REQUIRE(p.degree() == 2);
    for (int k = 0; k <= 2; ++k)
        CHECK(std::abs(p.coeffs()[k] - ref.coeffs()[k]) < 1e-6);

    RunResult raised = run_cli("comb --action raise --comb " + comb1 +
                               " --slit 0 --height 0");
    REQUIRE(raised.code == 0);
    json jr = json::parse(raised.out);
    CHECK(jr["comb"]["slits"][0]["height"].get<double>() == doctest::Approx(h0));
    ArcSet rset = jr["set"].get<ArcSet>();
    CHECK(rset.measure() == doctest::Approx(pi).epsilon(1e-8));

    CHECK(run_cli("comb --action delete --comb " + comb1 + " --slit 0").code == 5);

    RunResult mapped = run_cli("comb --action map --comb " + comb1 + " --samples 4");
    REQUIRE(mapped.code == 0);
    auto rows = csv_rows(mapped.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0][2] == doctest::Approx(h0).epsilon(1e-8)); // theta(0) = i*h0

    // Deleting one of two slits and equalizing the measure restores it.
    const std::string comb2 = write_doc(
        "comb2",
        {{"n", 2}, {"slits", {{{"base", 0.0}, {"height", 1.0}}, {{"base", pi}, {"height", 0.8}}}}});
    RunResult fit = run_cli("comb --action raise --comb " + comb2 + " --slit 0 --height 0");
    REQUIRE(fit.code == 0);
    const double target = json::parse(fit.out)["set"].get<ArcSet>().measure();
    RunResult deleted = run_cli("comb --action delete --comb " + comb2 + " --slit 1");
    REQUIRE(deleted.code == 0);
    const std::string rest =
        write_doc("comb_rest", json::parse(deleted.out)["comb"]);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", target);
    RunResult eq = run_cli("comb --action equalize --comb " + rest + " --measure " + buf);
    REQUIRE(eq.code == 0);
    json je = json::parse(eq.out);
    CHECK(je["increment"].get<double>() > 0.0);
    CHECK(je["set"].get<ArcSet>().measure() == doctest::Approx(target).epsilon(1e-6));
}

TEST_CASE("extend reports the three verdict cases") {
    RunResult single = run_cli("extend -n 2 --set " + single_gap_file());
    REQUIRE(single.code == 0);
    json js = json::parse(single.out);
    CHECK(js["regular"] == true);
    CHECK(js["extended_measure"].get<double>() ==
          doctest::Approx(js["measure"].get<double>()).epsilon(1e-5));

    const std::string anti = write_doc(
        "anti", json(ArcSet::from_gaps({{-0.4, 0.4}, {pi - 0.4, pi + 0.4}})));
    RunResult ja = run_cli("extend -n 2 --set " + anti);
    REQUIRE(ja.code == 0);
    CHECK(json::parse(ja.out)["regular"] == true);

    const std::string generic = write_doc(
        "generic", json(ArcSet::from_gaps({{-0.3, 0.3}, {2.0, 2.9}})));
    RunResult jg = run_cli("extend -n 2 --set " + generic);
    REQUIRE(jg.code == 0);
    json g = json::parse(jg.out);
    CHECK(g["regular"] == false);
    CHECK(g["extended_measure"].get<double>() > g["measure"].get<double>() + 0.1);
}

TEST_CASE("reruns are byte identical") {
    const std::string args = "oracle -n 2 --set " + single_gap_file() + " -c 0.3";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);

    RunResult c = run_cli("extremal -n 3 -s 2.1 --samples 16");
    RunResult d = run_cli("extremal -n 3 -s 2.1 --samples 16");
    REQUIRE(c.code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("environment tolerance override and degree conversion") {
    RunResult r = run_cli("oracle -n 1 --set " + single_gap_file() + " -c 0",
                          "REMEZKIT_TOL=1e-4 ");
    REQUIRE(r.code == 0);
    CHECK(r.err.find("\"tol\":0.0001") != std::string::npos);
    CHECK(run_cli("oracle -n 1 --set " + single_gap_file() + " -c 0",
                  "REMEZKIT_TOL=banana ")
              .code == 2);

    RunResult deg = run_cli("constant --kind algebraic -n 2 -s 180 --degrees");
    REQUIRE(deg.code == 0);
    CHECK(json::parse(deg.out)["value"].get<double>() ==
          doctest::Approx(3.0).epsilon(1e-12));
}
