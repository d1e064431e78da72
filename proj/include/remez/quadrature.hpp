#pragma once

#include <functional>
#include <vector>

#include "remez/polynomial.hpp"

namespace remez {

/// Nodes and weights of a k-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Returns the cached k-point rule; nodes are Newton-refined roots of P_k.
const GaussRule& gauss_legendre(int points);

/// Integral of a complex-valued f over [a, b] by adaptive panel halving.
/// A panel is accepted when the 16-point value and the sum of its two halves
/// agree within the panel's share of tol; throws quadrature_error when a panel
/// still disagrees at max_depth.
cdouble integrate(const std::function<cdouble(double)>& f, double a, double b,
                  double tol = 1e-11, int max_depth = 48);

} // namespace remez
