#pragma once

#include "remez/polynomial.hpp"

namespace remez {

enum class ConstantKind { algebraic, trig, interval };

/// A sharp constant together with its log form (the value itself overflows to
/// +inf for large degrees; log_value stays finite).
struct SharpConstant {
    ConstantKind kind;
    int n;
    double parameter; // excluded arc length s, or interval half-length a
    double value;
    double log_value;
};

/// Largest possible sup-norm over the circle of a degree-n polynomial bounded by 1
/// on the complement of an arc of length s: T_n(sec(s/4)).
SharpConstant remez_constant_algebraic(int n, double s);

/// Trigonometric counterpart, T_{2n}(sec(s/4)); same code path with degree 2n.
SharpConstant remez_constant_trig(int n, double s);

/// Classical interval constant T_{2n}(csc(a/2)) for trig polynomials bounded on a
/// symmetric sub-interval of half-length a in (0, pi].
SharpConstant remez_constant_interval(int n, double a);

/// Slit height h with cosh(h/2) = sec(s/4); inverse of height_to_gap.
double gap_to_height(double s);

/// Gap length s = 4*asin(tanh(h/2)); inverse of gap_to_height.
double height_to_gap(double h);

/// The extremal polynomial evaluated at angle z:
/// e^{i(n z/2 + c1)} * T_n(sec(s/4) * cos((z - c0)/2)). Its modulus peaks at z = c0
/// where it equals the sharp algebraic constant.
cdouble extremal_eval(int n, double s, double c0, double c1, double z);

/// Coefficients of the extremal polynomial by interpolation at n+1 equispaced
/// angles, validated at 2n+2 further angles (residual <= 1e-9 * constant).
/// General (c0, c1) obtained by rotating the c0 = c1 = 0 expansion:
/// A_k -> A_k e^{-i k c0} e^{i(c1 + n c0/2)}.
CirclePolynomial extremal_coeffs(int n, double s, double c0 = 0.0, double c1 = 0.0);

/// Reference envelopes the sharp constant is compared against.
struct Envelopes {
    double asymptotic; // 1 + (n s)^2 / 8, small-s limit
    double erdelyi;    // e^{4 n s}
    double ganzburg;   // e^{2 n s}, valid for s <= pi/2
    double large_gap;  // (17 / (2*pi - s))^{2n}
    double log_erdelyi;
    double log_ganzburg;
    double log_large_gap;
};

Envelopes comparison_envelopes(int n, double s);

} // namespace remez
