#include "remez/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>

#include "remez/angles.hpp"
#include "remez/errors.hpp"
#include "remez/lp.hpp"

namespace remez {
namespace {

constexpr double pi = std::numbers::pi;

// Row of the direction functional Re(e^{-i phi} P(e^{ix})) over the variable
// layout (Re A_0..Re A_n, Im A_0..Im A_n).
std::vector<double> direction_row(int n, double x, double phi) {
    std::vector<double> a(2 * (n + 1));
    for (int k = 0; k <= n; ++k) {
        a[static_cast<size_t>(k)] = std::cos(k * x - phi);
        a[static_cast<size_t>(n + 1 + k)] = -std::sin(k * x - phi);
    }
    return a;
}

CirclePolynomial polynomial_from_vars(int n, const std::vector<double>& v) {
    std::vector<cdouble> c(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        c[static_cast<size_t>(k)] = cdouble(v[static_cast<size_t>(k)], v[static_cast<size_t>(n + 1 + k)]);
    return CirclePolynomial(std::move(c), true);
}

// Golden-section maximum on [lo, hi] to within xtol in the argument. The
// strict comparison keeps the left subinterval on ties, so among equal maxima
// the smallest angle wins.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double xtol) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c1 = b - inv_phi * (b - a);
    double c2 = a + inv_phi * (b - a);
    double f1 = f(c1);
    double f2 = f(c2);
    while (b - a > xtol) {
        if (f2 > f1) {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + inv_phi * (b - a);
            f2 = f(c2);
        } else {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - inv_phi * (b - a);
            f1 = f(c1);
        }
    }
    return 0.5 * (a + b);
}

struct LocalMax {
    double angle;
    double value;
};

// Local maxima of |p| over the set, sampled per band at the given density and
// refined between grid neighbours. Band endpoints count as one-sided maxima;
// interior plateau points need one strict neighbour so a flat modulus does not
// flood the list.
std::vector<LocalMax> scan_maxima(const CirclePolynomial& p, const ArcSet& set, double density) {
    auto f = [&](double x) { return p.abs_angle(x); };
    std::vector<LocalMax> out;
    auto refine = [&](double lo, double mid_x, double mid_f, double hi) {
        double arg = golden_max(f, lo, hi, 1e-10);
        double val = f(arg);
        if (mid_f > val) {
            arg = mid_x;
            val = mid_f;
        }
        out.push_back({mod_two_pi(arg), val});
    };

    if (set.gaps().empty()) {
        int m = std::max(8, static_cast<int>(std::ceil(two_pi * density)));
        double h = two_pi / m;
        std::vector<double> fs(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) fs[static_cast<size_t>(i)] = f(i * h);
        for (int i = 0; i < m; ++i) {
            double prev = fs[static_cast<size_t>((i + m - 1) % m)];
            double next = fs[static_cast<size_t>((i + 1) % m)];
            if (fs[static_cast<size_t>(i)] >= prev && fs[static_cast<size_t>(i)] >= next &&
                (fs[static_cast<size_t>(i)] > prev || fs[static_cast<size_t>(i)] > next))
                refine((i - 1) * h, i * h, fs[static_cast<size_t>(i)], (i + 1) * h);
        }
        if (out.empty()) // |p| constant on the circle
            out.push_back({0.0, fs[0]});
        return out;
    }

    for (const auto& [start, len] : set.bands()) {
        int m = std::max(4, static_cast<int>(std::ceil(len * density)));
        double h = len / m;
        std::vector<double> fs(static_cast<size_t>(m) + 1);
        for (int i = 0; i <= m; ++i) fs[static_cast<size_t>(i)] = f(start + i * h);
        for (int i = 0; i <= m; ++i) {
            bool is_max;
            if (i == 0)
                is_max = fs[0] >= fs[1];
            else if (i == m)
                is_max = fs[static_cast<size_t>(m)] >= fs[static_cast<size_t>(m) - 1];
            else
                is_max = fs[static_cast<size_t>(i)] >= fs[static_cast<size_t>(i) - 1] &&
                         fs[static_cast<size_t>(i)] >= fs[static_cast<size_t>(i) + 1] &&
                         (fs[static_cast<size_t>(i)] > fs[static_cast<size_t>(i) - 1] ||
                          fs[static_cast<size_t>(i)] > fs[static_cast<size_t>(i) + 1]);
            if (is_max)
                refine(start + (i == 0 ? 0 : i - 1) * h, start + i * h, fs[static_cast<size_t>(i)],
                       start + (i == m ? m : i + 1) * h);
        }
    }
    return out;
}

} // namespace

SetMax sup_on_set(const CirclePolynomial& p, const ArcSet& set, double density) {
    if (set.is_empty()) throw degenerate_error("sup over the empty set is undefined");
    auto maxima = scan_maxima(p, set, density);
    SetMax best{-1.0, 0.0};
    for (const auto& lm : maxima)
        if (lm.value > best.value) best = {lm.value, lm.angle};
    return best;
}

OracleSolution max_at_angle(const OracleProblem& prob) {
    if (prob.n < 1) throw error("polynomial degree must be at least 1");
    if (prob.polygon_order < 8) throw error("polygon order must be at least 8");
    if (prob.set.is_empty()) throw degenerate_error("cannot maximize over the empty set");

    const int n = prob.n;
    const int M = prob.polygon_order;
    // The last term keeps at least ~2(n+1) distinct grid angles on sets of tiny
    // measure; values at n+1 points already pin the polynomial down.
    const double density = std::max({prob.grid_density, 8.0 * n / pi, 32.0 / pi,
                                     (2.0 * n + 2.0) / prob.set.measure()});
    const double target = mod_two_pi(prob.target_angle);
    const double floor_ratio = (1.0 + prob.tol) / std::cos(pi / M);

    const std::vector<double> objective = direction_row(n, target, 0.0);

    std::vector<std::pair<double, int>> support;
    std::vector<LpConstraint> cons;
    auto add_point = [&](double x, int m) {
        for (const auto& [xs, ms] : support)
            if (ms == m && angle_distance(xs, x) < 1e-9) return false;
        support.emplace_back(x, m);
        cons.push_back({direction_row(n, x, two_pi * m / M), 1.0});
        return true;
    };
    // Seed a coarse phase fan only: dropping cuts keeps the LP a relaxation, so
    // the optimum stays an upper bound, and the exchange rounds below add the
    // exact fine-phase cut at each observed violation. The convergence floor
    // already prices the full resolution M.
    const int fan = std::min(M, 16);
    for (double x : prob.set.sample_grid(density))
        for (int k = 0; k < fan; ++k) add_point(x, k * M / fan);

    LpResult lp;
    CirclePolynomial poly;
    SetMax sup;
    bool done = false;
    int rounds = 0;
    while (rounds < prob.max_rounds) {
        lp = lp_solve(objective, cons);
        ++rounds;
        poly = polynomial_from_vars(n, lp.x);
        auto maxima = scan_maxima(poly, prob.set, 10.0 * density);
        sup = {0.0, target};
        for (const auto& lm : maxima)
            if (lm.value > sup.value) sup = {lm.value, lm.angle};
        if (sup.value <= floor_ratio) {
            done = true;
            break;
        }
        bool progress = false;
        for (const auto& lm : maxima) {
            if (lm.value <= floor_ratio) continue;
            double phase = std::arg(poly.eval_angle(lm.angle));
            int m = static_cast<int>(std::llround(phase * M / two_pi));
            m = ((m % M) + M) % M;
            if (add_point(lm.angle, m)) progress = true;
        }
        if (!progress)
            throw solver_error("exchange loop stalled without new support points");
    }
    if (!done)
        throw solver_error("exchange loop did not converge within the round limit");

    OracleSolution sol;
    sol.upper = lp.value;
    // P scaled by 1/sup is feasible, so its modulus at the target (at least the
    // LP objective Re P) certifies the lower bound.
    sol.lower = std::min(std::abs(poly.eval_angle(target)) / std::max(1.0, sup.value), sol.upper);
    sol.coefficients = poly;
    sol.iterations = rounds;
    for (int idx : lp.basis)
        if (idx >= 0 && idx < static_cast<int>(support.size()))
            sol.active_points.push_back(mod_two_pi(support[static_cast<size_t>(idx)].first));
    std::sort(sol.active_points.begin(), sol.active_points.end());
    sol.active_points.erase(std::unique(sol.active_points.begin(), sol.active_points.end(),
                                        [](double a, double b) { return angle_distance(a, b) < 1e-9; }),
                            sol.active_points.end());
    return sol;
}

GapMaxResult max_over_gap(OracleProblem prob, int gap_index) {
    const auto& gaps = prob.set.gaps();
    if (gap_index < 0 || gap_index >= static_cast<int>(gaps.size()))
        throw error("gap index out of range");
    const Arc gap = gaps[static_cast<size_t>(gap_index)];
    const double lo = gap.start;
    const double hi = gap.start + gap.length();

    // The maximizing polynomial is the same for every target in the gap, so one
    // solve at the midpoint yields the whole value profile.
    prob.target_angle = 0.5 * (lo + hi);
    OracleSolution probe = max_at_angle(prob);
    const CirclePolynomial& p = probe.coefficients;
    auto profile = [&](double x) { return p.abs_angle(x); };

    double c_star = golden_max(profile, lo, hi, 1e-10);
    double best = profile(c_star);

    // Coarse scan guard: golden section assumes a unimodal profile, so rerun it
    // around the best of 33 equispaced samples if that beats the first answer.
    double scan_arg = lo;
    double scan_val = profile(lo);
    for (int i = 1; i <= 32; ++i) {
        double x = lo + (hi - lo) * i / 32.0;
        double v = profile(x);
        if (v > scan_val) {
            scan_val = v;
            scan_arg = x;
        }
    }
    if (scan_val > best * (1.0 + 1e-9)) {
        double step = (hi - lo) / 32.0;
        double refined = golden_max(profile, std::max(lo, scan_arg - step),
                                    std::min(hi, scan_arg + step), 1e-10);
        if (profile(refined) > best) c_star = refined;
    }

    prob.target_angle = c_star;
    OracleSolution sol = max_at_angle(prob);

    // Polish: the second polynomial is more accurate near its own target; if
    // its profile peaks materially elsewhere, move once and re-solve.
    auto profile2 = [&](double x) { return sol.coefficients.abs_angle(x); };
    double c2 = golden_max(profile2, lo, hi, 1e-10);
    if (std::abs(c2 - c_star) > 1e-7 && profile2(c2) > profile2(c_star)) {
        c_star = c2;
        prob.target_angle = c_star;
        sol = max_at_angle(prob);
    }
    GapMaxResult out;
    out.c_star = mod_two_pi(c_star);
    out.value = 0.5 * (sol.lower + sol.upper);
    out.solution = std::move(sol);
    return out;
}

} // namespace remez
