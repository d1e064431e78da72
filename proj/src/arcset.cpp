#include "remez/arcset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "remez/angles.hpp"
#include "remez/errors.hpp"

namespace remez {

namespace {

constexpr double merge_tol = 1e-12;

struct Interval {
    double lo, hi;
};

} // namespace

double Arc::length() const {
    return mod_two_pi(end - start);
}

ArcSet ArcSet::from_gaps(const std::vector<Arc>& raw) {
    std::vector<Interval> iv;
    iv.reserve(2 * raw.size());
    for (const Arc& a : raw) {
        double s = mod_two_pi(a.start);
        double len = mod_two_pi(a.end - a.start);
        if (len <= merge_tol) continue; // empty arc
        iv.push_back({s, s + len});
        iv.push_back({s + two_pi, s + len + two_pi}); // shifted copy closes the circle seam
    }

    ArcSet out;
    if (iv.empty()) return out;

    std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const Interval& i : iv) {
        if (!merged.empty() && i.lo <= merged.back().hi + merge_tol)
            merged.back().hi = std::max(merged.back().hi, i.hi);
        else
            merged.push_back(i);
    }

    for (const Interval& m : merged)
        if (m.hi - m.lo >= two_pi - merge_tol)
            throw degenerate_error("arc set: gaps cover the whole circle");

    for (const Interval& m : merged) {
        if (m.lo >= two_pi) continue; // copy of a component already seen
        // A component is redundant if a wrapping component covers its shifted copy.
        bool absorbed = false;
        for (const Interval& d : merged)
            if (d.lo <= m.lo + two_pi + merge_tol && d.hi >= m.hi + two_pi - merge_tol &&
                !(d.lo == m.lo + two_pi && d.hi == m.hi + two_pi)) {
                absorbed = true;
                break;
            }
        if (absorbed) continue;
        out.gaps_.push_back({m.lo, mod_two_pi(m.hi)});
    }

    std::sort(out.gaps_.begin(), out.gaps_.end(),
              [](const Arc& a, const Arc& b) { return a.start < b.start; });
    return out;
}

ArcSet ArcSet::empty_set() {
    ArcSet s;
    s.empty_ = true;
    return s;
}

double ArcSet::measure() const {
    if (empty_) return 0.0;
    double total = 0.0;
    for (const Arc& g : gaps_) total += g.length();
    return two_pi - total;
}

bool ArcSet::contains(double x) const {
    if (empty_) return false;
    double xr = mod_two_pi(x);
    for (const Arc& g : gaps_) {
        double t = mod_two_pi(xr - g.start);
        if (t > 0.0 && t < g.length()) return false;
    }
    return true;
}

std::vector<std::pair<double, double>> ArcSet::bands() const {
    if (empty_) throw degenerate_error("arc set: empty set has no bands");
    if (gaps_.empty()) return {{0.0, two_pi}};
    std::vector<std::pair<double, double>> out;
    const std::size_t m = gaps_.size();
    for (std::size_t i = 0; i < m; ++i) {
        double a = mod_two_pi(gaps_[i].end);
        double next_start = gaps_[(i + 1) % m].start;
        double len = mod_two_pi(next_start - a);
        // Two disjoint positive-length gaps always leave a positive band between them,
        // but a single gap spanning almost everything can leave len == 0 after rounding;
        // keep the band, sampling still returns its endpoints.
        out.push_back({a, len});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> ArcSet::sample_grid(double density) const {
    if (density <= 0.0) throw std::domain_error("sample_grid: density must be positive");
    if (empty_) throw degenerate_error("sample_grid: empty set");

    std::vector<double> pts;
    if (gaps_.empty()) {
        std::size_t n = static_cast<std::size_t>(std::ceil(two_pi * density));
        if (n == 0) n = 1;
        pts.reserve(n);
        for (std::size_t k = 0; k < n; ++k) pts.push_back(two_pi * static_cast<double>(k) / static_cast<double>(n));
        return pts;
    }

    for (const auto& [a, len] : bands()) {
        std::size_t k = static_cast<std::size_t>(std::ceil(len * density));
        if (k == 0) k = 1;
        for (std::size_t j = 0; j <= k; ++j)
            pts.push_back(mod_two_pi(a + len * static_cast<double>(j) / static_cast<double>(k)));
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

ArcSet ArcSet::rotated(double alpha) const {
    if (empty_) return *this;
    std::vector<Arc> g;
    g.reserve(gaps_.size());
    for (const Arc& a : gaps_) g.push_back({a.start + alpha, a.end + alpha});
    return from_gaps(g);
}

} // namespace remez
