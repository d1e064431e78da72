#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "remez/angles.hpp"
#include "remez/arcset.hpp"
#include "remez/closed_form.hpp"
#include "remez/errors.hpp"
#include "remez/oracle.hpp"
#include "remez/regularity.hpp"

using namespace remez;

namespace {

constexpr double pi = std::numbers::pi_v<double>;

CirclePolynomial constant_poly(cdouble c) { return CirclePolynomial({c}); }

/// Set with the given gaps, lengths and centers chosen per test.
ArcSet gaps_at(const std::vector<std::pair<double, double>>& center_len) {
    std::vector<Arc> arcs;
    for (auto [c, len] : center_len) arcs.push_back({c - 0.5 * len, c + 0.5 * len});
    return ArcSet::from_gaps(arcs);
}

} // namespace

TEST_CASE("circle sup norm on closed forms") {
    auto [cv, ca] = sup_norm_on_circle(constant_poly(cdouble(0.3, -0.4)));
    CHECK(cv == doctest::Approx(0.5).epsilon(1e-12));
    (void)ca;

    std::vector<cdouble> mono(6, 0.0);
    mono[5] = 1.0;
    auto [mv, ma] = sup_norm_on_circle(CirclePolynomial(mono));
    CHECK(mv == doctest::Approx(1.0).epsilon(1e-12));
    (void)ma;

    auto [ev, ea] = sup_norm_on_circle(extremal_coeffs(2, pi));
    CHECK(ev == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(angle_distance(ea, 0.0) <= 1e-6);
}

TEST_CASE("circle sup norm never falls below a dense scan") {
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<cdouble> coeffs(6);
        for (cdouble& c : coeffs) c = {gauss(rng), gauss(rng)};
        if (std::abs(coeffs.back()) < 0.1) coeffs.back() += 0.2;
        CirclePolynomial p(coeffs);
        auto [v, a] = sup_norm_on_circle(p);
        CHECK(std::abs(p.eval_angle(a)) == doctest::Approx(v).epsilon(1e-12));
        for (int i = 0; i < 1000; ++i) CHECK(p.abs_angle(i * two_pi / 1000) <= v + 1e-9);
    }
}

TEST_CASE("sublevel set of simple polynomials") {
    ArcSet below = sublevel_set(constant_poly(0.5));
    CHECK(below.gaps().empty());
    CHECK(below.measure() == doctest::Approx(two_pi).epsilon(1e-15));

    ArcSet above = sublevel_set(constant_poly(2.0));
    CHECK(above.is_empty());
    CHECK(above.measure() == 0.0);
}

TEST_CASE("sublevel set of the extremal polynomial is one-gap") {
    for (int n : {1, 2, 3, 4}) {
        for (double s : {0.5 * pi, pi}) {
            CAPTURE(n);
            CAPTURE(s);
            ArcSet sub = sublevel_set(extremal_coeffs(n, s));
            REQUIRE(sub.gaps().size() == 1);
            const Arc& gap = sub.gaps()[0];
            CHECK(gap.length() == doctest::Approx(s).epsilon(0).scale(1).epsilon(1e-6));
            CHECK(angle_distance(gap.start, -0.5 * s) <= 1e-6);
            CHECK(angle_distance(gap.end, 0.5 * s) <= 1e-6);
            CHECK(sub.measure() == doctest::Approx(two_pi - s).epsilon(1e-7));
        }
    }
}

TEST_CASE("remez check flags equality and violation") {
    for (int n : {1, 3, 5}) {
        const double s = 0.8 * pi;
        CAPTURE(n);
        CirclePolynomial p = extremal_coeffs(n, s);
        VerificationReport rep = check_remez(p, BoundKind::algebraic);
        CHECK(rep.remez_ok);
        CHECK(rep.sup_norm ==
              doctest::Approx(rep.constant_used).epsilon(1e-8));
        CHECK(two_pi - rep.sublevel_measure == doctest::Approx(s).epsilon(1e-5));

        // Scaling up cannot break the self-sublevel form: the sublevel set
        // shrinks along with it and the bound tracks the new measure.
        VerificationReport rescaled = check_remez(p.scaled(1.01), BoundKind::algebraic);
        CHECK(rescaled.remez_ok);
        CHECK(rescaled.sublevel_measure < rep.sublevel_measure);

        // Against the claimed original domain the scaled polynomial fails.
        ArcSet domain = rep.sublevel;
        VerificationReport bad =
            check_remez(p.scaled(1.01), BoundKind::algebraic, domain);
        CHECK_FALSE(bad.remez_ok);
        VerificationReport good = check_remez(p, BoundKind::algebraic, domain);
        CHECK(good.remez_ok);
    }
}

TEST_CASE("remez check of polynomials bounded by one") {
    VerificationReport rep = check_remez(constant_poly(0.5), BoundKind::algebraic);
    CHECK(rep.remez_ok);
    CHECK(rep.sublevel_measure == doctest::Approx(two_pi));
    CHECK(rep.constant_used == 1.0);

    // sup <= 1 forces the sublevel set to be the full circle.
    std::mt19937 rng(11);
    std::normal_distribution<double> gauss;
    std::vector<cdouble> coeffs(5);
    for (cdouble& c : coeffs) c = {gauss(rng), gauss(rng)};
    CirclePolynomial p(coeffs);
    p = p.scaled(1.0 / (sup_norm_on_circle(p).first * 1.01));
    VerificationReport scaled = check_remez(p, BoundKind::algebraic);
    CHECK(scaled.sublevel_measure == doctest::Approx(two_pi));
    CHECK(scaled.remez_ok);
}

TEST_CASE("remez check rejects an everywhere-large polynomial") {
    CHECK_THROWS_AS(check_remez(constant_poly(2.0), BoundKind::algebraic),
                    degenerate_error);
}

TEST_CASE("trigonometric kind uses the doubled-degree constant") {
    // A trig polynomial of degree 1 stored analytically has circle degree 2.
    CirclePolynomial p = extremal_coeffs(2, pi);
    VerificationReport rep = check_remez(p, BoundKind::trigonometric);
    CHECK(rep.remez_ok);
    CHECK(rep.constant_used ==
          doctest::Approx(remez_constant_trig(1, two_pi - rep.sublevel_measure).value)
              .epsilon(1e-12));
    CHECK_THROWS_AS(check_remez(extremal_coeffs(3, pi), BoundKind::trigonometric),
                    error);
}

TEST_CASE("remez check holds on random polynomials") {
    std::mt19937 rng(2026);
    std::normal_distribution<double> gauss;
    int skipped = 0;
    for (int n = 1; n <= 8; ++n) {
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<cdouble> coeffs(n + 1);
            for (cdouble& c : coeffs) c = {gauss(rng), gauss(rng)};
            CirclePolynomial p(coeffs, /*allow_zero_leading=*/true);
            try {
                VerificationReport rep = check_remez(p, BoundKind::algebraic);
                if (!rep.remez_ok) {
                    CAPTURE(n);
                    CAPTURE(trial);
                    CAPTURE(rep.sup_norm);
                    CAPTURE(rep.constant_used);
                    CHECK(rep.remez_ok);
                }
            } catch (const degenerate_error&) {
                ++skipped; // |P| > 1 everywhere: nothing to check
            }
        }
    }
    CHECK(skipped < 4000);
}

TEST_CASE("phase fix is idempotent and phase blind") {
    CirclePolynomial p = extremal_coeffs(3, pi);
    CirclePolynomial fixed = phase_fix(p);
    REQUIRE(fixed.degree() == p.degree());
    for (int k = 0; k <= p.degree(); ++k)
        CHECK(std::abs(fixed.coeffs()[k] - p.coeffs()[k]) <= 1e-12);

    CirclePolynomial rotated = phase_fix(p.scaled(std::polar(1.0, 0.7)));
    for (int k = 0; k <= p.degree(); ++k)
        CHECK(std::abs(rotated.coeffs()[k] - fixed.coeffs()[k]) <= 1e-10);
}

TEST_CASE("phase fix symmetrizes arbitrary polynomials") {
    std::mt19937 rng(5);
    std::normal_distribution<double> gauss;
    std::vector<cdouble> coeffs(7);
    for (cdouble& c : coeffs) c = {gauss(rng), gauss(rng)};
    CirclePolynomial fixed = phase_fix(CirclePolynomial(coeffs), 1.3);
    const int n = fixed.degree();
    for (int k = 0; k <= n; ++k)
        CHECK(std::abs(fixed.coeffs()[k] - std::conj(fixed.coeffs()[n - k])) <= 1e-10);
    // The de-rotated trace is positive at the target angle.
    cdouble f = std::exp(cdouble(0.0, -0.5 * n * 1.3)) * fixed.eval_angle(1.3);
    CHECK(f.real() > 0.0);
    CHECK(std::abs(f.imag()) <= 1e-10 * std::abs(f));
}

TEST_CASE("phase fix rejects a vanishing symmetrization") {
    // Anti-self-reciprocal (A_k = -conj(A_{n-k})) with an exact zero at the
    // target, so no phase rotation can rescue it: the symmetrized trace is 0.
    CirclePolynomial p({cdouble(0.0, 1.0), cdouble(0.0, -2.0), cdouble(0.0, 1.0)});
    CHECK_THROWS_AS(phase_fix(p, 0.0), degenerate_error);
}

TEST_CASE("phase fix recovers the extremizer from the oracle") {
    const double s = pi;
    OracleProblem prob;
    prob.n = 2;
    prob.set = gaps_at({{0.0, s}});
    prob.target_angle = 0.0;
    prob.polygon_order = 4096;
    prob.tol = 1e-7;
    OracleSolution sol = max_at_angle(prob);
    CirclePolynomial fixed = phase_fix(sol.coefficients, 0.0);
    const SetMax sup = sup_on_set(fixed, prob.set, 200.0 / pi);
    fixed = fixed.scaled(1.0 / sup.value);

    CirclePolynomial reference = extremal_coeffs(2, s);
    REQUIRE(fixed.degree() == reference.degree());
    for (int k = 0; k <= reference.degree(); ++k)
        CHECK(std::abs(fixed.coeffs()[k] - reference.coeffs()[k]) <= 1e-4);
}

TEST_CASE("extension leaves a single-gap set fixed") {
    ArcSet set = gaps_at({{0.0, pi}});
    ExtensionResult ext = n_regular_extension(2, set, 0);
    CHECK(sets_match(set, ext.extended, 1e-5));
    CHECK(ext.extended.measure() >= set.measure() - 1e-6);
    CHECK(is_n_regular(2, set));
}

TEST_CASE("extension leaves an antipodal pair fixed for degree two") {
    ArcSet set = gaps_at({{0.0, 0.8}, {pi, 0.8}});
    ExtensionResult ext = n_regular_extension(2, set, 0);
    CHECK(sets_match(set, ext.extended, 1e-5));
    CHECK(is_n_regular(2, set));
}

TEST_CASE("extension grows a lopsided pair and is idempotent") {
    ArcSet set = gaps_at({{0.0, 0.9}, {0.7 * pi, 0.5}});
    ExtensionResult ext = n_regular_extension(2, set, 0);
    CHECK(ext.extended.measure() > set.measure() + 1e-4);
    CHECK_FALSE(sets_match(set, ext.extended, 1e-5));

    ExtensionResult again = n_regular_extension(2, ext.extended, 0);
    CHECK(sets_match(ext.extended, again.extended, 1e-5));

    // The extension preserves the extremal value at the anchor angle.
    const double mid = mod_two_pi(set.gaps()[0].start + 0.5 * set.gaps()[0].length());
    OracleProblem prob;
    prob.n = 2;
    prob.set = set;
    prob.target_angle = mid;
    prob.polygon_order = 2048;
    prob.tol = 1e-7;
    OracleSolution on_e = max_at_angle(prob);
    prob.set = ext.extended;
    OracleSolution on_ehat = max_at_angle(prob);
    const double ve = 0.5 * (on_e.lower + on_e.upper);
    const double vh = 0.5 * (on_ehat.lower + on_ehat.upper);
    CHECK(vh == doctest::Approx(ve).epsilon(1e-4));
}

TEST_CASE("extension argument checks") {
    CHECK_THROWS_AS(n_regular_extension(2, ArcSet(), 0), error);
    CHECK_THROWS_AS(n_regular_extension(2, gaps_at({{0.0, pi}}), 3), error);
}
