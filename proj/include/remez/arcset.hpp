#pragma once

#include <vector>

namespace remez {

/// Open arc of the unit circle, identified by its endpoint angles in [0, 2*pi).
/// A wrapping arc (one that crosses angle 0) has end < start.
struct Arc {
    double start = 0.0;
    double end = 0.0;

    /// Arc length in (0, 2*pi); an arc with equal endpoints is empty, not full.
    double length() const;
};

/// Closed subset of the circle stored as its complement: sorted, pairwise disjoint
/// open gaps. No gaps means the full circle. The degenerate empty set (gaps covering
/// everything) can only be produced explicitly, never by normalization.
class ArcSet {
  public:
    /// Full circle.
    ArcSet() = default;

    /// Merge raw gap arcs into canonical form: endpoints reduced to [0, 2*pi),
    /// overlapping or touching gaps (tolerance 1e-12) merged, gaps sorted by start.
    /// Throws degenerate_error if the merged gaps cover the whole circle.
    static ArcSet from_gaps(const std::vector<Arc>& raw);

    /// The degenerate empty set (measure 0); sublevel sets of large polynomials need it.
    static ArcSet empty_set();

    const std::vector<Arc>& gaps() const { return gaps_; }
    bool is_empty() const { return empty_; }

    /// Lebesgue measure: 2*pi minus the total gap length (0 for the empty set).
    double measure() const;

    /// Membership after reducing x mod 2*pi. Gap endpoints belong to the set.
    bool contains(double x) const;

    /// Grid over the set with spacing <= 1/density on every band, including both
    /// endpoints of each band. On the full circle: ceil(2*pi*density) equispaced
    /// points. Angles returned sorted in [0, 2*pi).
    std::vector<double> sample_grid(double density) const;

    /// Maximal closed bands [gap i end, gap i+1 start] as (start, length) pairs on
    /// the unrolled line; start in [0, 2*pi), consecutive order. Full circle: one
    /// pseudo-band of length 2*pi starting at 0.
    std::vector<std::pair<double, double>> bands() const;

    /// The set rotated by alpha (every gap endpoint shifted), re-canonicalized.
    ArcSet rotated(double alpha) const;

  private:
    std::vector<Arc> gaps_;
    bool empty_ = false;
};

} // namespace remez
