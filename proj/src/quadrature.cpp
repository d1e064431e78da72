#include "remez/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "remez/errors.hpp"

namespace remez {

namespace {

GaussRule build_rule(int k) {
    GaussRule rule;
    rule.nodes.resize(k);
    rule.weights.resize(k);
    for (int i = 0; i < k; ++i) {
        // Chebyshev-angle initial guess, then Newton on P_k via the recurrence.
        double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= k; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (x * p1 - p0) / (x * x - 1.0);
            double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

struct Panel {
    cdouble integral;
    double mass; // integral of |f|: sets the roundoff floor of the estimate
};

Panel panel(const std::function<cdouble(double)>& f, double a, double b,
            const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    cdouble acc = 0.0;
    double mass = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const cdouble v = f(mid + half * rule.nodes[i]);
        acc += rule.weights[i] * v;
        mass += rule.weights[i] * std::abs(v);
    }
    return {half * acc, half * mass};
}

cdouble refine(const std::function<cdouble(double)>& f, double a, double b,
               const Panel& whole, double tol, int depth, const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    const Panel left = panel(f, a, mid, rule);
    const Panel right = panel(f, mid, b, rule);
    const cdouble split = left.integral + right.integral;
    // Accept on the requested tolerance or on the panel's own roundoff floor,
    // whichever is larger; without the floor a peaky integrand can demand
    // agreement below machine precision and recurse forever.
    const double floor = 1e-14 * (left.mass + right.mass);
    if (std::abs(split - whole.integral) <= std::max(tol, floor)) return split;
    if (depth <= 0)
        throw quadrature_error("adaptive panel integration did not converge on [" +
                               std::to_string(a) + ", " + std::to_string(b) + "]");
    return refine(f, a, mid, left, 0.5 * tol, depth - 1, rule) +
           refine(f, mid, b, right, 0.5 * tol, depth - 1, rule);
}

} // namespace

const GaussRule& gauss_legendre(int points) {
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(points);
    if (it == cache.end()) it = cache.emplace(points, build_rule(points)).first;
    return it->second;
}

cdouble integrate(const std::function<cdouble(double)>& f, double a, double b,
                  double tol, int max_depth) {
    if (a == b) return 0.0;
    if (b < a) return -integrate(f, b, a, tol, max_depth);
    const GaussRule& rule = gauss_legendre(16);
    return refine(f, a, b, panel(f, a, b, rule), tol, max_depth, rule);
}

} // namespace remez
