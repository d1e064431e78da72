#pragma once

#include <utility>

#include "remez/arcset.hpp"
#include "remez/polynomial.hpp"

namespace remez {

/// Which sharp constant a polynomial is checked against: its own degree, or
/// half of it read as a trigonometric degree (the polynomial is then the
/// analytic representation zeta^n * Q of a trig polynomial Q, same modulus).
enum class BoundKind { algebraic, trigonometric };

/// Outcome of checking a polynomial against the sharp bound.
struct VerificationReport {
    double sup_norm = 0.0;
    double sup_arg = 0.0;
    ArcSet sublevel;
    double sublevel_measure = 0.0;
    double excluded_length = 0.0; // the s the bound constant was computed from
    bool remez_ok = false;
    double constant_used = 1.0;
};

/// Global maximum of |P(e^{ix})| and the angle attaining it: coarse grid of
/// max(64, 16n) points, then ternary refinement of every local maximum to
/// 1e-12 in angle.
std::pair<double, double> sup_norm_on_circle(const CirclePolynomial& p);

/// The set {x : |P(e^{ix})| <= level}. |P|^2 - level^2 is a real trig
/// polynomial with at most 2n circle zeros; sign changes are bracketed on a
/// grid of 40n+64 points and bisected to 1e-12. Tangential touchings become
/// zero-length gaps and are dropped in normalization (a warning is printed
/// when a grid extremum sits within 1e-10 of the level without crossing).
ArcSet sublevel_set(const CirclePolynomial& p, double level = 1.0);

/// Sharp-bound check against the polynomial's own unit sublevel set:
/// s = 2*pi - measure{|P| <= 1}, ok iff the sup norm is at most the sharp
/// constant for that s times (1 + 1e-9). Since the sublevel set adapts to
/// scaling, exact arithmetic can never fail this form; it validates the
/// constant and the measured sublevel against each other. Throws
/// degenerate_error when the sublevel set is empty; the trigonometric kind
/// requires even degree.
VerificationReport check_remez(const CirclePolynomial& p, BoundKind kind);

/// Sharp-bound check against a claimed domain: ok iff |P| <= 1 + 1e-9 on
/// `claimed` AND the sup norm is within the constant for
/// s = 2*pi - measure(claimed). A polynomial exceeding 1 on the claimed set
/// fails rather than throws; the report still carries the actual sublevel.
VerificationReport check_remez(const CirclePolynomial& p, BoundKind kind,
                               const ArcSet& claimed);

/// Rotates the global phase so the de-rotated trace e^{-inx/2} P(e^{ix}) is
/// positive at the target angle, then symmetrizes the trace to a real
/// function of x. Output coefficients satisfy A_k = conj(A_{n-k}) to
/// rounding; extremizers are fixed points. Throws degenerate_error when the
/// symmetrized polynomial vanishes identically.
CirclePolynomial phase_fix(const CirclePolynomial& p, double target_angle = 0.0);

struct ExtensionResult {
    ArcSet extended;
    CirclePolynomial extremal;
};

/// The largest set on which the degree-n extremizer anchored in the chosen
/// gap of `set` stays bounded by 1: solve the fixed-target problem at the
/// gap midpoint, phase-fix, rescale to sup 1 on the set, and take the unit
/// sublevel set. The result contains `set` up to root-refinement slack.
ExtensionResult n_regular_extension(int n, const ArcSet& set, int gap_index = 0);

/// True when x and y have the same gaps with endpoints within tol (circular
/// distance, any pairing).
bool sets_match(const ArcSet& x, const ArcSet& y, double tol);

/// True when the n-regular extension leaves the set unchanged within 1e-5.
bool is_n_regular(int n, const ArcSet& set);

} // namespace remez
