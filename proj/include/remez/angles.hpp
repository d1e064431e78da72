#pragma once

#include <cmath>
#include <numbers>

namespace remez {

inline constexpr double two_pi = 2.0 * std::numbers::pi_v<double>;

/// Reduce an angle to [0, 2*pi).
inline double mod_two_pi(double x) {
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0; // fmod can round up to 2*pi for x just below a multiple
    return r;
}

/// Circular distance between two angles, in [0, pi].
inline double angle_distance(double a, double b) {
    double d = mod_two_pi(a - b);
    return d <= std::numbers::pi_v<double> ? d : two_pi - d;
}

} // namespace remez
