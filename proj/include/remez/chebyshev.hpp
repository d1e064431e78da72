#pragma once

namespace remez {

/// arccosh on [1, inf) via log1p(u + sqrt(u*(2+u))) with u = x-1, stable near x = 1.
double acosh_stable(double x);

/// Chebyshev polynomial of the first kind T_n(x) on the whole real line:
/// cos(n*acos x) for |x| <= 1, cosh(n*acosh x) for x > 1, parity reflection for
/// x < -1. Throws std::overflow_error when the value exceeds double range
/// (the message points at cheb_t_log).
double cheb_t(int n, double x);

/// log T_n(x) for x >= 1 without overflow:
/// n*acosh(x) + log((1 + e^{-2n*acosh x})/2). Safe up to n ~ 1e5 and beyond.
double cheb_t_log(int n, double x);

} // namespace remez
