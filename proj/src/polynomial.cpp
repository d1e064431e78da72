#include "remez/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace remez {

CirclePolynomial::CirclePolynomial(std::vector<cdouble> coeffs, bool allow_zero_leading)
    : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("CirclePolynomial: no coefficients");
    if (!allow_zero_leading && coeffs_.back() == cdouble(0.0, 0.0))
        throw std::invalid_argument("CirclePolynomial: zero leading coefficient");
}

cdouble CirclePolynomial::eval(cdouble zeta) const {
    cdouble acc(0.0, 0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * zeta + *it;
    return acc;
}

cdouble CirclePolynomial::eval_angle(double x) const {
    return eval(std::polar(1.0, x));
}

CirclePolynomial CirclePolynomial::reversal_conjugate() const {
    std::vector<cdouble> c(coeffs_.rbegin(), coeffs_.rend());
    for (cdouble& v : c) v = std::conj(v);
    return CirclePolynomial(std::move(c), true);
}

CirclePolynomial CirclePolynomial::scaled(cdouble factor) const {
    std::vector<cdouble> c = coeffs_;
    for (cdouble& v : c) v *= factor;
    return CirclePolynomial(std::move(c), true);
}

CirclePolynomial CirclePolynomial::rotated(double alpha) const {
    std::vector<cdouble> c = coeffs_;
    for (std::size_t k = 0; k < c.size(); ++k)
        c[k] *= std::polar(1.0, -alpha * static_cast<double>(k));
    return CirclePolynomial(std::move(c), true);
}

} // namespace remez
