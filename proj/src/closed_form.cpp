#include "remez/closed_form.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "remez/angles.hpp"
#include "remez/chebyshev.hpp"
#include "remez/errors.hpp"

namespace remez {

namespace {

constexpr double pi = std::numbers::pi_v<double>;

void check_gap_length(double s) {
    if (!(s >= 0.0 && s < two_pi))
        throw std::domain_error("remez constant: gap length must lie in [0, 2*pi)");
}

SharpConstant make_constant(ConstantKind kind, int n, double param, int cheb_degree, double arg) {
    double lv = cheb_t_log(cheb_degree, arg);
    double v = lv < 709.0 ? std::exp(lv) : std::numeric_limits<double>::infinity();
    // exp(log T) loses a couple of digits; the direct branch-split evaluation is
    // exact to 1e-15 whenever it does not overflow.
    if (std::isfinite(v)) v = cheb_t(cheb_degree, arg);
    return {kind, n, param, v, lv};
}

} // namespace

SharpConstant remez_constant_algebraic(int n, double s) {
    if (n < 0) throw std::domain_error("remez constant: negative degree");
    check_gap_length(s);
    return make_constant(ConstantKind::algebraic, n, s, n, 1.0 / std::cos(s / 4.0));
}

SharpConstant remez_constant_trig(int n, double s) {
    if (n < 0) throw std::domain_error("remez constant: negative degree");
    check_gap_length(s);
    return make_constant(ConstantKind::trig, n, s, 2 * n, 1.0 / std::cos(s / 4.0));
}

SharpConstant remez_constant_interval(int n, double a) {
    if (n < 0) throw std::domain_error("remez constant: negative degree");
    if (!(a > 0.0 && a <= pi))
        throw std::domain_error("remez constant: interval half-length must lie in (0, pi]");
    return make_constant(ConstantKind::interval, n, a, 2 * n, 1.0 / std::sin(a / 2.0));
}

double gap_to_height(double s) {
    check_gap_length(s);
    return 2.0 * acosh_stable(1.0 / std::cos(s / 4.0));
}

double height_to_gap(double h) {
    if (h < 0.0) throw std::domain_error("height_to_gap: negative height");
    return 4.0 * std::asin(std::tanh(h / 2.0));
}

cdouble extremal_eval(int n, double s, double c0, double c1, double z) {
    check_gap_length(s);
    double arg = std::cos((z - c0) / 2.0) / std::cos(s / 4.0);
    return std::polar(cheb_t(n, arg), 0.5 * n * z + c1);
}

CirclePolynomial extremal_coeffs(int n, double s, double c0, double c1) {
    if (n < 1) throw std::domain_error("extremal_coeffs: degree must be at least 1");
    check_gap_length(s);

    const int m = n + 1;
    std::vector<cdouble> vals(m);
    for (int k = 0; k < m; ++k) vals[k] = extremal_eval(n, s, 0.0, 0.0, two_pi * k / m);

    std::vector<cdouble> coeffs(m);
    for (int j = 0; j < m; ++j) {
        cdouble acc(0.0, 0.0);
        for (int k = 0; k < m; ++k)
            acc += vals[k] * std::polar(1.0, -two_pi * static_cast<double>(j) * k / m);
        coeffs[j] = acc / static_cast<double>(m);
    }
    CirclePolynomial p(std::move(coeffs), true);

    double constant = cheb_t(n, 1.0 / std::cos(s / 4.0));
    for (int l = 0; l < 2 * n + 2; ++l) {
        double z = two_pi * (l + 0.5) / (2 * n + 2);
        double resid = std::abs(p.eval_angle(z) - extremal_eval(n, s, 0.0, 0.0, z));
        if (resid > 1e-9 * constant)
            throw solver_error("extremal_coeffs: interpolation residual check failed");
    }

    if (c0 != 0.0 || c1 != 0.0)
        p = p.rotated(c0).scaled(std::polar(1.0, c1 + 0.5 * n * c0));
    return p;
}

Envelopes comparison_envelopes(int n, double s) {
    if (n < 0) throw std::domain_error("comparison_envelopes: negative degree");
    check_gap_length(s);
    Envelopes e;
    double ns = static_cast<double>(n) * s;
    e.asymptotic = 1.0 + ns * ns / 8.0;
    e.log_erdelyi = 4.0 * ns;
    e.log_ganzburg = 2.0 * ns;
    e.log_large_gap = 2.0 * n * std::log(17.0 / (two_pi - s));
    auto safe_exp = [](double lv) {
        return lv < 709.0 ? std::exp(lv) : std::numeric_limits<double>::infinity();
    };
    e.erdelyi = safe_exp(e.log_erdelyi);
    e.ganzburg = safe_exp(e.log_ganzburg);
    e.large_gap = safe_exp(e.log_large_gap);
    return e;
}

} // namespace remez
