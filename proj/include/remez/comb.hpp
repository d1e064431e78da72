#pragma once

#include <vector>

#include "remez/arcset.hpp"
#include "remez/polynomial.hpp"

namespace remez {

/// One removed slit of a comb region: the vertical segment from `base` on the
/// real axis up to height `height` (and its 2*pi-periodic copies).
struct CombSlit {
    double base = 0.0;
    double height = 0.0;
};

/// A periodic comb region: the upper half-plane minus the slits. A comb is
/// degree-regular when every base sits on the 2*pi/n grid; only those combs
/// synthesize degree-n polynomial extremizers.
struct CombDomain {
    int n = 1;
    std::vector<CombSlit> slits;
};

/// True when every slit base is within tol of a multiple of 2*pi/comb.n.
bool on_degree_grid(const CombDomain& comb, double tol = 1e-6);

/// Throws unless degrees, heights, and base spacing make a solvable comb.
void validate_comb(const CombDomain& comb);

/// Prevertices of one gap of the band set: endpoints a < b and the critical
/// angle c strictly between them (the preimage of the slit tip).
struct GapTriple {
    double a = 0.0;
    double c = 0.0;
    double b = 0.0;
};

/// The conformal map theta from the upper half-plane onto a comb region,
/// determined by its boundary prevertices. Triples are unrolled angles,
/// strictly increasing, spanning less than one period. Normalizations:
/// theta' -> 1 at i*infinity and theta(a_0) = 0, so theta(z + 2*pi) =
/// theta(z) + 2*pi and slit 0 has base 0. The gap images are genuine
/// two-sided vertical slits only when the critical angles solve the closure
/// conditions (see fit_comb_to_set); closure_residual reports the defect.
class CombMap {
  public:
    explicit CombMap(std::vector<GapTriple> gaps, double quad_tol = 1e-11);

    /// theta'(z) on the closed upper half-plane; blows up like an inverse
    /// square root at the gap endpoints, where it throws instead.
    cdouble derivative(cdouble z) const;

    /// theta(z) on the closed upper half-plane. Real z get the continuous
    /// boundary values; Im z above `altitude` uses theta(z) = z + shift().
    cdouble map(cdouble z) const;

    const std::vector<GapTriple>& gaps() const { return gaps_; }
    int gap_count() const { return static_cast<int>(gaps_.size()); }

    double slit_height(int j) const; // Im theta(c_j)
    double slit_base(int j) const;   // Re theta(c_j), unrolled from 0

    /// Im of the round-trip integral of theta' across gap j; 0 at a solution
    /// of the closure conditions.
    double closure_residual(int j) const;

    /// theta(a_0 + 2*pi) - 2*pi: a pure quadrature diagnostic, not a solve
    /// residual (periodicity is exact for the kernel).
    double period_defect() const;

    /// The additive constant theta(z) - z tends to at i*infinity. Its
    /// imaginary part is the mean of Im theta over one period of the real
    /// axis, hence positive for any nonempty slit family.
    cdouble shift() const { return shift_; }

    /// The band set: complement of the (a_j, b_j) arcs.
    ArcSet arcs() const;

    /// Height of the ceiling above which map() switches to z + shift(); the
    /// kernel is within e^{-2*altitude} of 1 there.
    static constexpr double altitude = 40.0;

  private:
    /// One kernel factor seen from a march anchor: the prevertex offset
    /// reduced by whole periods (m turns, remainder red). Keeping the reduced
    /// remainder exact to relative precision is what lets the adaptive
    /// quadrature converge next to nearly touching prevertices.
    struct Reduced {
        int m = 0;
        double red = 0.0;
    };

    cdouble kernel(cdouble z) const; // theta' without the singularity guard
    cdouble kernel_at(int anchor, cdouble offset) const;
    cdouble march_integral(int anchor, cdouble dir, double length) const;
    cdouble boundary_value(double x) const;

    std::vector<GapTriple> gaps_;
    double quad_tol_;
    cdouble log_c_;                // purely imaginary kernel normalizer
    std::vector<std::vector<Reduced>> anchors_; // rows: a_0, b_0, a_1, b_1, ...
    std::vector<cdouble> theta_a_; // march table: theta at a_j
    std::vector<cdouble> theta_c_; // theta at c_j
    std::vector<cdouble> theta_b_; // theta at b_j
    std::vector<cdouble> closure_; // per-gap round-trip integral
    cdouble period_end_;           // theta at a_0 + 2*pi
    cdouble shift_;
};

/// A solved correspondence between a band set and a comb.
struct CombFit {
    CombMap map;
    CombDomain comb; // achieved slits (bases reduced to [0, 2*pi), slit 0 at 0)
    bool regular = false;
};

/// Fits the critical angles c_j so that every gap of `set` maps onto a closed
/// vertical slit, by damped Newton on the closure conditions (initial guess:
/// gap midpoints). Gap `designated` becomes slit 0. The comb records the
/// resulting bases and heights; regular means every base lies on the
/// 2*pi/n grid within 1e-6 (off-grid is a flag, not an error).
CombFit fit_comb_to_set(int n, const ArcSet& set, int designated = 0);

/// Inverse problem: recovers the gap triples realizing the given slits, by
/// damped Newton on the stacked closure, height, and relative-base residuals.
/// The designated critical angle is pinned at 0 (the map's rotation is not
/// observable in the comb data), so the set comes out with c_0 = 0 and
/// theta(0) = i*h_0.
CombFit fit_set_to_comb(const CombDomain& comb);

/// The degree-n extremizer of the map's band set, synthesized by sampling
/// e^{i n x / 2} cos(n theta(x) / 2) at n+1 equispaced angles. Requires the
/// slit bases on the 2*pi/n grid (throws regularity_error otherwise); the
/// interpolation is re-checked at 2n+2 offset angles against the samples.
CirclePolynomial extremal_from_comb(const CombMap& map, int n);

/// Raising one slit and re-solving: the band set loses measure (Lemma-style
/// monotone deformation), strictly unless increment is 0.
struct RaiseResult {
    CombDomain comb;
    ArcSet set;
};
RaiseResult raise_height(const CombDomain& comb, int slit_index, double increment);

/// Finds the increment on slit 0 whose raised set has the target measure, by
/// bisection on the monotone measure map; |measure - target| <= 1e-8.
struct EqualizeResult {
    double increment = 0.0;
    ArcSet set;
};
EqualizeResult equalize_measure(const CombDomain& comb, double target);

/// Removes one slit (needs at least two); the remaining comb's band set is
/// strictly larger in measure.
CombDomain delete_slit(const CombDomain& comb, int slit_index);

/// Exact map for a single gap of length s centered at 0, via the algebraic
/// chain zeta = e^{iz}, lambda = i(1-zeta)/(1+zeta), mu, w = (i-mu)/(i+mu),
/// theta = -i log w, branch fixed by theta(iy) ~ iy. Reference for validating
/// the quadrature path; matches CombMap normalization (theta(-s/2) = 0).
cdouble single_gap_map(double s, cdouble z);

} // namespace remez
