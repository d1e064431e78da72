#include "remez/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

namespace remez {

double acosh_stable(double x) {
    if (x < 1.0) throw std::domain_error("acosh_stable: argument below 1");
    double u = x - 1.0;
    return std::log1p(u + std::sqrt(u * (2.0 + u)));
}

double cheb_t(int n, double x) {
    if (n < 0) throw std::domain_error("cheb_t: negative degree");
    if (x >= -1.0 && x <= 1.0) return std::cos(static_cast<double>(n) * std::acos(x));
    double ax = x > 0.0 ? x : -x;
    double t = static_cast<double>(n) * acosh_stable(ax);
    double v = std::cosh(t);
    if (!std::isfinite(v))
        throw std::overflow_error("cheb_t: value overflows double range, use cheb_t_log");
    return (x > 0.0 || n % 2 == 0) ? v : -v;
}

double cheb_t_log(int n, double x) {
    if (n < 0) throw std::domain_error("cheb_t_log: negative degree");
    if (x < 1.0) throw std::domain_error("cheb_t_log: argument below 1");
    double t = static_cast<double>(n) * acosh_stable(x);
    // T_n(x) = cosh(n*acosh x) = e^t * (1 + e^{-2t}) / 2
    return t + std::log1p(std::exp(-2.0 * t)) - std::log(2.0);
}

} // namespace remez
