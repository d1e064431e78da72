#pragma once

#include <vector>

namespace remez {

/// One half-plane constraint a . x <= b.
struct LpConstraint {
    std::vector<double> a;
    double b;
};

struct LpResult {
    std::vector<double> x;
    double value;
    std::vector<int> basis; // indices of active constraints at the optimal vertex
};

/// Maximize objective . x over free x subject to the constraints. Requires a
/// feasible region nonempty and bounded in the objective direction. Solved by a
/// two-phase dense simplex on the dual (basic solutions of size dim x), Dantzig
/// pricing with a switch to Bland's rule on stalling; primal and dual objectives
/// must agree to 1e-9 * (1 + |value|) or a solver_error is thrown.
LpResult lp_solve(const std::vector<double>& objective, const std::vector<LpConstraint>& constraints);

} // namespace remez
