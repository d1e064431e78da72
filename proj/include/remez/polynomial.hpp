#pragma once

#include <complex>
#include <vector>

namespace remez {

using cdouble = std::complex<double>;

/// Algebraic polynomial restricted to the unit circle, stored by coefficients
/// A_0..A_n of P(zeta) = sum A_k zeta^k.
class CirclePolynomial {
  public:
    CirclePolynomial() = default;

    /// Leading coefficient must be nonzero unless allow_zero_leading permits a
    /// formal degree (needed when coefficients come from interpolation).
    explicit CirclePolynomial(std::vector<cdouble> coeffs, bool allow_zero_leading = false);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<cdouble>& coeffs() const { return coeffs_; }

    cdouble eval(cdouble zeta) const;

    /// P(e^{ix}).
    cdouble eval_angle(double x) const;
    double abs_angle(double x) const { return std::abs(eval_angle(x)); }

    /// zeta^n * conj(P(1/conj zeta)): coefficients conj(A_{n-k}). On the circle it
    /// has the same modulus as P.
    CirclePolynomial reversal_conjugate() const;

    CirclePolynomial scaled(cdouble factor) const;

    /// P(zeta * e^{-i alpha}): the picture of P rotated forward by alpha.
    CirclePolynomial rotated(double alpha) const;

  private:
    std::vector<cdouble> coeffs_{cdouble(0.0, 0.0)};
};

} // namespace remez
