#pragma once

#include <stdexcept>
#include <string>

namespace remez {

/// Base class for all remezkit failures that are not plain argument misuse.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A set degenerated (gaps cover the circle, empty sublevel set, vanishing polynomial).
struct degenerate_error : error {
    explicit degenerate_error(const std::string& msg) : error(msg) {}
};

/// LP or exchange-loop failure: infeasible, unbounded, cycling, or iteration limit.
struct solver_error : error {
    explicit solver_error(const std::string& msg) : error(msg) {}
};

/// Adaptive quadrature failed to reach the requested tolerance.
struct quadrature_error : error {
    explicit quadrature_error(const std::string& msg) : error(msg) {}
};

/// Newton solve for comb parameters diverged or a gap collapsed.
struct comb_error : error {
    explicit comb_error(const std::string& msg) : error(msg) {}
};

/// An operation requiring slit bases on the 2*pi/n grid was given an off-grid comb.
struct regularity_error : error {
    explicit regularity_error(const std::string& msg) : error(msg) {}
};

/// File could not be opened, read, or written.
struct io_error : error {
    explicit io_error(const std::string& msg) : error(msg) {}
};

} // namespace remez
