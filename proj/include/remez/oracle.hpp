#pragma once

#include "remez/arcset.hpp"
#include "remez/polynomial.hpp"

namespace remez {

/// Maximize |P(e^{ic})| over degree-n polynomials with |P| <= 1 on the set.
struct OracleProblem {
    int n = 1;
    ArcSet set;
    double target_angle = 0.0;
    int polygon_order = 64;    // M: outer polygon directions for the disk constraint
    double grid_density = 0.0; // points per radian; 0 picks max(8n/pi, 32/pi)
    double tol = 1e-6;
    int max_rounds = 60;       // exchange-loop limit
};

/// Certified bracket around the true maximum. `coefficients` is the raw LP
/// optimum: `upper` is the LP objective of the outer relaxation, and the
/// polynomial scaled by 1/sup_set|P| is feasible and attains `lower` at the
/// target angle.
struct OracleSolution {
    double lower = 0.0;
    double upper = 0.0;
    CirclePolynomial coefficients;
    std::vector<double> active_points;
    int iterations = 0;
};

/// Fixed-target problem: LP over the polygon relaxation on a grid, then an
/// exchange loop appending refined violation maxima until sup_set |P| falls
/// below (1 + tol)/cos(pi/M) (the circumscribed polygon's intrinsic radius).
OracleSolution max_at_angle(const OracleProblem& prob);

struct GapMaxResult {
    double c_star = 0.0;
    double value = 0.0; // midpoint of the bracket at c_star
    OracleSolution solution;
};

/// Maximum over the chosen gap. The extremizer does not depend on the target
/// angle, so one fixed-target solve gives the value profile |P(e^{ic})|;
/// golden-section over the gap (ties to the smaller angle), cross-checked by a
/// 33-point coarse scan, locates c*, and a second solve certifies the value.
GapMaxResult max_over_gap(OracleProblem prob, int gap_index);

struct SetMax {
    double value = 0.0;
    double angle = 0.0;
};

/// sup |P| over the set: per-band scan at the given density (points per radian)
/// with ternary refinement of every local maximum to 1e-10 in angle.
SetMax sup_on_set(const CirclePolynomial& p, const ArcSet& set, double density);

} // namespace remez
