#include "remez/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <numbers>
#include <vector>

#include "remez/angles.hpp"
#include "remez/closed_form.hpp"
#include "remez/errors.hpp"
#include "remez/oracle.hpp"

namespace remez {

namespace {

/// Narrow [lo, hi] around a maximum of f by ternary search to width tol.
double ternary_max(const std::function<double(double)>& f, double lo, double hi,
                   double tol) {
    while (hi - lo > tol) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (f(m1) < f(m2))
            lo = m1;
        else
            hi = m2;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::pair<double, double> sup_norm_on_circle(const CirclePolynomial& p) {
    const int grid = std::max(64, 16 * p.degree());
    const double step = two_pi / grid;
    std::vector<double> vals(grid);
    for (int i = 0; i < grid; ++i) vals[i] = p.abs_angle(i * step);

    auto f = [&p](double x) { return p.abs_angle(x); };
    double best = -1.0, best_x = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double prev = vals[(i + grid - 1) % grid];
        const double next = vals[(i + 1) % grid];
        if (vals[i] < prev || vals[i] < next) continue;
        const double x = ternary_max(f, (i - 1) * step, (i + 1) * step, 1e-12);
        const double v = f(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    return {best, mod_two_pi(best_x)};
}

ArcSet sublevel_set(const CirclePolynomial& p, double level) {
    if (!(level > 0.0)) throw error("sublevel set: level must be positive");
    const int grid = 40 * p.degree() + 64;
    const double step = two_pi / grid;
    auto g = [&](double x) {
        const double m = p.abs_angle(x);
        return m * m - level * level;
    };
    std::vector<double> vals(grid);
    double scale = level * level;
    for (int i = 0; i < grid; ++i) {
        vals[i] = g(i * step);
        scale = std::max(scale, std::abs(vals[i]));
    }
    // Tangential touchings (|P| = level with no crossing) evaluate to rounding
    // noise of either sign when a grid point lands on them; clamp noise-level
    // values to the inside so they cannot fabricate micro-gaps.
    for (double& v : vals)
        if (std::abs(v) <= 1e-12 * scale) v = -1e-12 * scale;

    std::vector<double> roots;
    for (int i = 0; i < grid; ++i) {
        const double va = vals[i], vb = vals[(i + 1) % grid];
        if ((va > 0.0) == (vb > 0.0)) {
            // No crossing; flag a grazing extremum (likely double root).
            const double vp = vals[(i + grid - 1) % grid];
            if (std::abs(va) < 1e-10 && (va - vp) * (vb - va) <= 0.0)
                std::cerr << "sublevel set: tangency suspected near x = " << i * step
                          << "\n";
            continue;
        }
        double lo = i * step, hi = (i + 1) * step;
        bool lo_pos = va > 0.0;
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            if ((g(mid) > 0.0) == lo_pos)
                lo = mid;
            else
                hi = mid;
        }
        roots.push_back(0.5 * (lo + hi));
    }

    if (roots.empty()) return vals[0] <= 0.0 ? ArcSet() : ArcSet::empty_set();

    // Intervals between consecutive roots (cyclically) where g > 0 are gaps.
    // A band symmetric about a tangential touch puts the touch exactly at its
    // midpoint, so classify by three interior samples under the noise clamp.
    std::vector<Arc> gaps;
    for (size_t k = 0; k < roots.size(); ++k) {
        const double a = roots[k];
        const double b = (k + 1 < roots.size()) ? roots[k + 1] : roots[0] + two_pi;
        double peak = -1.0;
        for (double f : {0.25, 0.5, 0.75}) peak = std::max(peak, g(a + f * (b - a)));
        if (peak > 1e-12 * scale) gaps.push_back({a, b});
    }
    if (gaps.empty()) return ArcSet();
    return ArcSet::from_gaps(gaps);
}

namespace {

/// Fill in the sharp constant for excluded length s and the verdict.
void apply_bound(VerificationReport& report, int degree, BoundKind kind, double s) {
    report.excluded_length = std::max(s, 0.0);
    report.constant_used = 1.0;
    if (s > 0.0) {
        if (kind == BoundKind::algebraic) {
            report.constant_used = remez_constant_algebraic(degree, s).value;
        } else {
            if (degree % 2 != 0)
                throw error("remez check: trigonometric kind needs even degree");
            report.constant_used = remez_constant_trig(degree / 2, s).value;
        }
    }
    report.remez_ok = report.sup_norm <= report.constant_used * (1.0 + 1e-9);
}

} // namespace

VerificationReport check_remez(const CirclePolynomial& p, BoundKind kind) {
    VerificationReport report;
    std::tie(report.sup_norm, report.sup_arg) = sup_norm_on_circle(p);
    report.sublevel = sublevel_set(p, 1.0);
    report.sublevel_measure = report.sublevel.measure();
    if (report.sublevel.is_empty() || report.sublevel_measure <= 0.0)
        throw degenerate_error("remez check: |P| exceeds 1 everywhere");
    apply_bound(report, p.degree(), kind, two_pi - report.sublevel_measure);
    return report;
}

VerificationReport check_remez(const CirclePolynomial& p, BoundKind kind,
                               const ArcSet& claimed) {
    if (claimed.is_empty() || claimed.measure() <= 0.0)
        throw degenerate_error("remez check: claimed set has measure zero");
    VerificationReport report;
    std::tie(report.sup_norm, report.sup_arg) = sup_norm_on_circle(p);
    report.sublevel = sublevel_set(p, 1.0);
    report.sublevel_measure = report.sublevel.measure();
    apply_bound(report, p.degree(), kind, two_pi - claimed.measure());
    const SetMax on_set =
        sup_on_set(p, claimed, 200.0 / std::numbers::pi_v<double>);
    report.remez_ok = report.remez_ok && on_set.value <= 1.0 + 1e-9;
    return report;
}

CirclePolynomial phase_fix(const CirclePolynomial& p, double target_angle) {
    const int n = p.degree();
    const cdouble f =
        std::exp(cdouble(0.0, -0.5 * n * target_angle)) * p.eval_angle(target_angle);
    const cdouble rot = std::abs(f) > 0.0 ? std::conj(f) / std::abs(f) : cdouble(1.0);

    const std::vector<cdouble>& a = p.coeffs();
    std::vector<cdouble> b(n + 1);
    double in_scale = 0.0, out_scale = 0.0;
    for (int k = 0; k <= n; ++k) {
        b[k] = 0.5 * (rot * a[k] + std::conj(rot * a[n - k]));
        in_scale = std::max(in_scale, std::abs(a[k]));
        out_scale = std::max(out_scale, std::abs(b[k]));
    }
    if (out_scale <= 1e-14 * in_scale)
        throw degenerate_error("phase fix: symmetrized polynomial vanishes");
    return CirclePolynomial(std::move(b), /*allow_zero_leading=*/true);
}

ExtensionResult n_regular_extension(int n, const ArcSet& set, int gap_index) {
    const std::vector<Arc>& gaps = set.gaps();
    if (gaps.empty()) throw error("regular extension: the set needs at least one gap");
    if (gap_index < 0 || gap_index >= static_cast<int>(gaps.size()))
        throw error("regular extension: gap index out of range");
    const Arc& gap = gaps[gap_index];
    const double mid = mod_two_pi(gap.start + 0.5 * gap.length());

    OracleProblem prob;
    prob.n = n;
    prob.set = set;
    prob.target_angle = mid;
    // The sublevel endpoints move linearly with coefficient error, so the
    // polygon must be much finer than the default reporting setup.
    prob.polygon_order = 4096;
    prob.tol = 1e-7;
    OracleSolution sol = max_at_angle(prob);

    CirclePolynomial fixed = phase_fix(sol.coefficients, mid);
    // Rescale to sup exactly 1 on the set, so the sublevel set contains it.
    const SetMax sup = sup_on_set(fixed, set, 200.0 / std::numbers::pi_v<double>);
    if (!(sup.value > 0.0))
        throw degenerate_error("regular extension: extremizer vanishes on the set");
    fixed = fixed.scaled(1.0 / sup.value);
    return {sublevel_set(fixed, 1.0), fixed};
}

bool sets_match(const ArcSet& x, const ArcSet& y, double tol) {
    const std::vector<Arc>& gx = x.gaps();
    const std::vector<Arc>& gy = y.gaps();
    if (x.is_empty() != y.is_empty() || gx.size() != gy.size()) return false;
    std::vector<bool> used(gy.size(), false);
    for (const Arc& a : gx) {
        bool matched = false;
        for (size_t j = 0; j < gy.size(); ++j) {
            if (used[j]) continue;
            if (angle_distance(a.start, gy[j].start) <= tol &&
                angle_distance(a.end, gy[j].end) <= tol) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

bool is_n_regular(int n, const ArcSet& set) {
    return sets_match(set, n_regular_extension(n, set, 0).extended, 1e-5);
}

} // namespace remez
