#include "remez/comb.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <utility>

#include "remez/angles.hpp"
#include "remez/closed_form.hpp"
#include "remez/errors.hpp"
#include "remez/quadrature.hpp"

namespace remez {

namespace {

const cdouble iu(0.0, 1.0);

/// e^q - 1 with full relative accuracy in both components; the naive form
/// cancels catastrophically for small |q| and the roundoff would dominate
/// the kernel's phase near short bands.
cdouble expm1c(cdouble q) {
    const double er = std::expm1(q.real());
    const double ci = std::cos(q.imag());
    const double si = std::sin(q.imag());
    const double sh = std::sin(0.5 * q.imag());
    return {er * ci - 2.0 * sh * sh, (er + 1.0) * si};
}

/// log(sin w) continued analytically over the closed upper half-plane:
/// log(i/2) - i w + Log(1 - e^{2iw}). The Log argument stays in the closed
/// right half-plane (|e^{2iw}| <= 1 for Im w >= 0), so the principal branch
/// never crosses its cut, and e^{2iw} underflows harmlessly at altitude.
cdouble log_sin_upper(cdouble w) {
    static const cdouble log_i_half(-std::numbers::ln2_v<double>,
                                    0.5 * std::numbers::pi_v<double>);
    return log_i_half - iu * w + std::log(-expm1c(2.0 * iu * w));
}

/// a - b together with the exact rounding error (Shewchuk's two-diff).
double two_diff(double a, double b, double& err) {
    const double s = a - b;
    const double bv = a - s;
    err = (a - (s + bv)) + (bv - b);
    return s;
}

/// 2*pi split into a double and its tail, so that offsets between prevertices
/// in neighbouring periods keep full relative precision after reduction.
constexpr double two_pi_hi = 6.283185307179586;
constexpr double two_pi_lo = 2.4492935982947064e-16;

bool strictly_ordered(const std::vector<GapTriple>& gaps, double margin) {
    if (gaps.empty()) return false;
    for (size_t j = 0; j < gaps.size(); ++j) {
        const GapTriple& t = gaps[j];
        if (!(t.a + margin < t.c && t.c + margin < t.b)) return false;
        if (j + 1 < gaps.size() && !(t.b + margin < gaps[j + 1].a)) return false;
    }
    return gaps.back().b + margin < gaps.front().a + two_pi;
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Dense Gaussian elimination with partial pivoting (row-major n x n).
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
        if (std::abs(a[piv * n + k]) < 1e-14)
            throw comb_error("comb solve: singular Newton system");
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
            std::swap(b[k], b[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            double f = a[i * n + k] / a[k * n + k];
            for (int j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
        x[i] = s / a[i * n + i];
    }
    return x;
}

std::string format_residual(double r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

} // namespace

bool on_degree_grid(const CombDomain& comb, double tol) {
    if (comb.n < 1) return false;
    const double spacing = two_pi / comb.n;
    for (const CombSlit& s : comb.slits) {
        double r = s.base / spacing;
        if (std::abs(r - std::round(r)) * spacing > tol) return false;
    }
    return true;
}

void validate_comb(const CombDomain& comb) {
    if (comb.n < 1) throw error("comb: degree must be at least 1");
    if (comb.slits.empty()) throw degenerate_error("comb: needs at least one slit");
    for (const CombSlit& s : comb.slits)
        if (!(s.height > 0.0)) throw error("comb: slit heights must be positive");
    for (size_t i = 0; i < comb.slits.size(); ++i)
        for (size_t j = i + 1; j < comb.slits.size(); ++j)
            if (angle_distance(comb.slits[i].base, comb.slits[j].base) < 1e-9)
                throw error("comb: slit bases must be distinct");
}

CombMap::CombMap(std::vector<GapTriple> gaps, double quad_tol)
    : gaps_(std::move(gaps)), quad_tol_(quad_tol) {
    if (gaps_.empty()) throw degenerate_error("comb map: needs at least one gap");
    if (!strictly_ordered(gaps_, 0.0))
        throw error("comb map: gap triples must be strictly ordered within one period");

    // Purely imaginary normalizer: makes the kernel tend to exactly 1 at
    // i*infinity (the -iw parts of the log-sin terms cancel by construction).
    double gamma = 0.0;
    for (const GapTriple& t : gaps_) gamma += 0.25 * (t.a + t.b) - 0.5 * t.c;
    log_c_ = cdouble(0.0, gamma);

    const int m = gap_count();
    theta_a_.resize(m);
    theta_c_.resize(m);
    theta_b_.resize(m);
    closure_.resize(m);

    // Per-anchor reductions of every prevertex offset. Marches away from an
    // endpoint then see each nearby singularity (including period copies of
    // its partner across a short band) at a relative-accurate distance; this
    // keeps the integrands smooth to rounding and the panels convergent.
    anchors_.resize(2 * m);
    for (int i = 0; i < 2 * m; ++i) {
        const GapTriple& g = gaps_[i / 2];
        const double p = (i % 2 == 0) ? g.a : g.b;
        anchors_[i].reserve(3 * m);
        for (const GapTriple& t : gaps_)
            for (double q : {t.a, t.c, t.b}) {
                double lo = 0.0;
                const double hi = two_diff(p, q, lo);
                const int turns = static_cast<int>(std::lround(hi / two_pi_hi));
                const double red = ((hi - turns * two_pi_hi) + lo) - turns * two_pi_lo;
                anchors_[i].push_back({turns, red});
            }
    }

    theta_a_[0] = 0.0;
    for (int j = 0; j < m; ++j) {
        const GapTriple& t = gaps_[j];
        cdouble up = march_integral(2 * j, +1.0, t.c - t.a);
        cdouble down = march_integral(2 * j + 1, -1.0, t.b - t.c);
        theta_c_[j] = theta_a_[j] + up;
        theta_b_[j] = theta_c_[j] + down;
        closure_[j] = up + down;
        const double next_a = (j + 1 < m) ? gaps_[j + 1].a : gaps_[0].a + two_pi;
        const double mid = 0.5 * (t.b + next_a);
        // The right half of the final band anchors at a_0 one period down;
        // the kernel is exactly periodic, so the integral is unchanged.
        cdouble band = march_integral(2 * j + 1, +1.0, mid - t.b) +
                       ((j + 1 < m) ? march_integral(2 * (j + 1), -1.0, gaps_[j + 1].a - mid)
                                    : march_integral(0, -1.0, next_a - mid));
        if (j + 1 < m)
            theta_a_[j + 1] = theta_b_[j] + band;
        else
            period_end_ = theta_b_[j] + band;
    }

    // theta(a_0 + i*altitude) by a vertical rise from the anchor at a_0.
    cdouble rise = march_integral(0, iu, altitude);
    shift_ = iu * rise - cdouble(gaps_[0].a, altitude);
}

cdouble CombMap::kernel(cdouble z) const {
    cdouble s = log_c_;
    for (const GapTriple& t : gaps_) {
        s += log_sin_upper(0.5 * (z - t.c));
        s -= 0.5 * (log_sin_upper(0.5 * (z - t.a)) + log_sin_upper(0.5 * (z - t.b)));
    }
    return std::exp(s);
}

/// Kernel at anchor + offset using the precomputed reductions. Relies on the
/// exact branch identity log_sin_upper(w + m*pi) = log_sin_upper(w) - i*m*pi
/// of the continued logarithm.
cdouble CombMap::kernel_at(int anchor, cdouble offset) const {
    const std::vector<Reduced>& row = anchors_[anchor];
    cdouble s = log_c_;
    int turns = 0;
    for (size_t k = 0; k < row.size(); k += 3) {
        s += log_sin_upper(0.5 * (row[k + 1].red + offset));
        s -= 0.5 * (log_sin_upper(0.5 * (row[k].red + offset)) +
                    log_sin_upper(0.5 * (row[k + 2].red + offset)));
        turns += 2 * row[k + 1].m - row[k].m - row[k + 2].m;
    }
    s += cdouble(0.0, -0.5 * std::numbers::pi_v<double> * turns);
    return std::exp(s);
}

/// Integral of theta' over the segment of the given length marched from the
/// anchor along dir, as int_0^sqrt(length) 2u f(anchor + dir u^2) du; the
/// u^2 substitution soaks up the inverse square-root endpoint spike. For
/// dir = -1 this is still the positively oriented segment integral.
cdouble CombMap::march_integral(int anchor, cdouble dir, double length) const {
    return integrate(
        [&](double u) { return 2.0 * u * kernel_at(anchor, dir * (u * u)); },
        0.0, std::sqrt(length), quad_tol_);
}

cdouble CombMap::derivative(cdouble z) const {
    if (z.imag() < 0.0) throw error("comb map: derivative below the real axis");
    if (z.imag() < 1e-12) {
        for (const GapTriple& t : gaps_)
            for (double p : {t.a, t.b})
                if (angle_distance(z.real(), mod_two_pi(p)) < 1e-12)
                    throw comb_error("comb map: derivative singular at a gap endpoint");
    }
    return kernel(z);
}

cdouble CombMap::boundary_value(double x) const {
    const int m = gap_count();
    const double a0 = gaps_[0].a;
    // Snap to a breakpoint when within rounding distance of one.
    if (std::abs(x - (a0 + two_pi)) <= 1e-12) return period_end_;
    for (int j = 0; j < m; ++j) {
        if (std::abs(x - gaps_[j].a) <= 1e-12) return theta_a_[j];
        if (std::abs(x - gaps_[j].c) <= 1e-12) return theta_c_[j];
        if (std::abs(x - gaps_[j].b) <= 1e-12) return theta_b_[j];
    }
    for (int j = 0; j < m; ++j) {
        const GapTriple& t = gaps_[j];
        if (x < t.a) break; // x sits in the band handled below
        if (x < t.b) {
            const double da = x - t.a, db = t.b - x, dc = std::abs(x - t.c);
            if (da <= db && da <= dc)
                return theta_a_[j] + march_integral(2 * j, +1.0, da);
            if (db <= dc)
                return theta_b_[j] - march_integral(2 * j + 1, -1.0, db);
            return theta_c_[j] +
                   integrate([this](double t2) { return kernel(cdouble(t2, 0.0)); },
                             t.c, x, quad_tol_);
        }
    }
    for (int j = 0; j < m; ++j) {
        const double next_a = (j + 1 < m) ? gaps_[j + 1].a : a0 + two_pi;
        if (x > gaps_[j].b && x < next_a) {
            const cdouble at_next = (j + 1 < m) ? theta_a_[j + 1] : period_end_;
            const double db = x - gaps_[j].b, dn = next_a - x;
            if (db <= dn)
                return theta_b_[j] + march_integral(2 * j + 1, +1.0, db);
            // The wrapped band refines from a_0 one period down by periodicity.
            return at_next - ((j + 1 < m) ? march_integral(2 * (j + 1), -1.0, dn)
                                          : march_integral(0, -1.0, dn));
        }
    }
    throw error("comb map: boundary point escaped the fundamental period");
}

cdouble CombMap::map(cdouble z) const {
    if (z.imag() < 0.0) throw error("comb map: point below the real axis");
    const double a0 = gaps_[0].a;
    double k = std::floor((z.real() - a0) / two_pi);
    cdouble zr = z - two_pi * k;
    if (zr.real() < a0) { // rounding in the reduction: move up one period
        zr += two_pi;
        k -= 1.0;
    }
    cdouble val;
    if (zr.imag() == 0.0) {
        val = boundary_value(zr.real());
    } else if (zr.imag() >= altitude) {
        val = zr + shift_;
    } else {
        const double x = zr.real(), y = zr.imag();
        // Descend from the ceiling: theta(x+iy) = theta(x+iH) - i int_y^H theta' dt,
        // with t = y + u^2 clustering nodes where the kernel peaks.
        cdouble drop = integrate(
            [&](double u) { return kernel(cdouble(x, y + u * u)) * (2.0 * u); }, 0.0,
            std::sqrt(altitude - y), quad_tol_);
        val = cdouble(x, altitude) + shift_ - iu * drop;
    }
    return val + two_pi * k;
}

double CombMap::slit_height(int j) const {
    if (j < 0 || j >= gap_count()) throw error("comb map: slit index out of range");
    return theta_c_[j].imag();
}

double CombMap::slit_base(int j) const {
    if (j < 0 || j >= gap_count()) throw error("comb map: slit index out of range");
    return theta_c_[j].real();
}

double CombMap::closure_residual(int j) const {
    if (j < 0 || j >= gap_count()) throw error("comb map: slit index out of range");
    return closure_[j].imag();
}

double CombMap::period_defect() const { return std::abs(period_end_ - two_pi); }

ArcSet CombMap::arcs() const {
    std::vector<Arc> raw;
    raw.reserve(gaps_.size());
    for (const GapTriple& t : gaps_) raw.push_back({mod_two_pi(t.a), mod_two_pi(t.b)});
    return ArcSet::from_gaps(raw);
}

namespace {

std::vector<GapTriple> triples_from_set(const ArcSet& set, int designated) {
    if (set.is_empty()) throw degenerate_error("comb fit: empty set");
    const std::vector<Arc>& gaps = set.gaps();
    if (gaps.empty()) throw degenerate_error("comb fit: the set has no gaps");
    const int g = static_cast<int>(gaps.size());
    if (designated < 0 || designated >= g)
        throw error("comb fit: designated gap index out of range");
    std::vector<GapTriple> out(g);
    const double a0 = gaps[designated].start;
    for (int k = 0; k < g; ++k) {
        const Arc& arc = gaps[(designated + k) % g];
        const double a = a0 + mod_two_pi(arc.start - a0);
        const double b = a + arc.length();
        out[k] = {a, 0.5 * (a + b), b};
    }
    return out;
}

CombDomain comb_from_map(const CombMap& map, int n) {
    CombDomain comb;
    comb.n = n;
    for (int j = 0; j < map.gap_count(); ++j) {
        double base = mod_two_pi(map.slit_base(j));
        if (two_pi - base < 1e-9) base = 0.0;
        comb.slits.push_back({base, map.slit_height(j)});
    }
    return comb;
}

} // namespace

CombFit fit_comb_to_set(int n, const ArcSet& set, int designated) {
    if (n < 1) throw error("comb fit: degree must be at least 1");
    const std::vector<GapTriple> frame = triples_from_set(set, designated);
    const int m = static_cast<int>(frame.size());

    auto make = [&frame, m](const std::vector<double>& c) {
        std::vector<GapTriple> t = frame;
        for (int j = 0; j < m; ++j) t[j].c = c[j];
        return CombMap(t);
    };
    auto resid = [&make, m](const std::vector<double>& c) {
        CombMap mp = make(c);
        std::vector<double> r(m);
        for (int j = 0; j < m; ++j) r[j] = mp.closure_residual(j);
        return r;
    };

    std::vector<double> c(m);
    for (int j = 0; j < m; ++j) c[j] = frame[j].c;
    std::vector<double> r = resid(c);
    double rn = inf_norm(r);
    const double tol = 1e-10;
    for (int iter = 0; rn > tol; ++iter) {
        if (iter >= 40)
            throw comb_error("closure Newton did not converge; residual " +
                             format_residual(rn));
        std::vector<double> jac(m * m);
        for (int k = 0; k < m; ++k) {
            const double room =
                std::min(c[k] - frame[k].a, frame[k].b - c[k]);
            const double step = std::min(1e-7, 0.25 * room);
            std::vector<double> cp = c;
            cp[k] += step;
            std::vector<double> rp = resid(cp);
            for (int j = 0; j < m; ++j) jac[j * m + k] = (rp[j] - r[j]) / step;
        }
        const std::vector<double> dc = solve_dense(jac, r);
        double scale = 1.0;
        for (int halve = 0;; ++halve) {
            std::vector<double> cand = c;
            bool inside = true;
            for (int j = 0; j < m; ++j) {
                cand[j] = c[j] - scale * dc[j];
                const double margin = 1e-9 * (frame[j].b - frame[j].a);
                if (!(cand[j] > frame[j].a + margin && cand[j] < frame[j].b - margin))
                    inside = false;
            }
            if (inside) {
                bool evaluated = true;
                std::vector<double> rc;
                try {
                    rc = resid(cand);
                } catch (const quadrature_error&) {
                    evaluated = false; // candidate too degenerate to integrate
                }
                if (evaluated) {
                    const double rcn = inf_norm(rc);
                    if (rcn < rn || rcn <= tol) {
                        c = std::move(cand);
                        r = std::move(rc);
                        rn = rcn;
                        break;
                    }
                }
            }
            if (halve >= 20)
                throw comb_error("closure Newton stalled; residual " +
                                 format_residual(rn));
            scale *= 0.5;
        }
    }

    CombFit fit{make(c), CombDomain{}, false};
    fit.comb = comb_from_map(fit.map, n);
    fit.regular = on_degree_grid(fit.comb);
    return fit;
}

namespace {

/// Inverse-problem targets in geometric order: bases relative to slit 0.
struct InverseTargets {
    int n = 1;
    std::vector<double> heights;
    std::vector<double> bases; // bases[0] = 0, strictly increasing in (0, 2*pi)
};

InverseTargets targets_from_comb(const CombDomain& comb) {
    const int m = static_cast<int>(comb.slits.size());
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> rel(m);
    for (int i = 0; i < m; ++i)
        rel[i] = mod_two_pi(comb.slits[i].base - comb.slits[0].base);
    std::sort(order.begin(), order.end(),
              [&rel](int i, int j) { return rel[i] < rel[j]; });
    InverseTargets t;
    t.n = comb.n;
    for (int i : order) {
        t.heights.push_back(comb.slits[i].height);
        t.bases.push_back(rel[i]);
    }
    return t;
}

std::vector<GapTriple> initial_triples(const InverseTargets& t) {
    const int m = static_cast<int>(t.heights.size());
    std::vector<GapTriple> out(m);
    for (int k = 0; k < m; ++k) {
        const double prev = (k > 0) ? t.bases[k - 1] : t.bases[m - 1] - two_pi;
        const double next = (k + 1 < m) ? t.bases[k + 1] : t.bases[0] + two_pi;
        double half = 0.5 * height_to_gap(t.heights[k]);
        half = std::min(half, 0.4 * (t.bases[k] - prev));
        half = std::min(half, 0.4 * (next - t.bases[k]));
        out[k] = {t.bases[k] - half, t.bases[k], t.bases[k] + half};
    }
    return out;
}

std::vector<double> pack_triples(const std::vector<GapTriple>& t) {
    std::vector<double> x{t[0].a, t[0].b};
    for (size_t j = 1; j < t.size(); ++j) {
        x.push_back(t[j].a);
        x.push_back(t[j].c);
        x.push_back(t[j].b);
    }
    return x;
}

std::vector<GapTriple> unpack_triples(const std::vector<double>& x, int m) {
    std::vector<GapTriple> t(m);
    t[0] = {x[0], 0.0, x[1]}; // the designated critical angle is pinned at 0
    for (int j = 1; j < m; ++j)
        t[j] = {x[3 * j - 1], x[3 * j], x[3 * j + 1]};
    return t;
}

std::vector<double> inverse_residual(const CombMap& map, const InverseTargets& t) {
    const int m = map.gap_count();
    std::vector<double> r;
    r.reserve(3 * m - 1);
    for (int j = 0; j < m; ++j) r.push_back(map.closure_residual(j));
    for (int j = 0; j < m; ++j) r.push_back(map.slit_height(j) - t.heights[j]);
    for (int j = 1; j < m; ++j) r.push_back(map.slit_base(j) - t.bases[j]);
    return r;
}

std::vector<GapTriple> solve_inverse_from(const InverseTargets& targets,
                                          std::vector<GapTriple> init) {
    const int m = static_cast<int>(targets.heights.size());
    const int dim = 3 * m - 1;
    const double tol = 1e-10;

    auto valid = [m](const std::vector<double>& x) {
        return strictly_ordered(unpack_triples(x, m), 1e-9);
    };
    auto resid = [&targets, m](const std::vector<double>& x) {
        CombMap mp(unpack_triples(x, m));
        return inverse_residual(mp, targets);
    };

    std::vector<double> x = pack_triples(init);
    if (!valid(x)) throw comb_error("comb fit: initial guess out of order");
    std::vector<double> r = resid(x);
    double rn = inf_norm(r);
    for (int iter = 0; rn > tol; ++iter) {
        if (iter >= 60)
            throw comb_error("inverse comb Newton did not converge; residual " +
                             format_residual(rn));
        std::vector<double> jac(dim * dim);
        for (int k = 0; k < dim; ++k) {
            double step = 1e-7;
            std::vector<double> xp = x;
            xp[k] += step;
            if (!valid(xp)) {
                step = -step;
                xp[k] = x[k] + step;
            }
            const std::vector<double> rp = resid(xp);
            for (int j = 0; j < dim; ++j) jac[j * dim + k] = (rp[j] - r[j]) / step;
        }
        const std::vector<double> dx = solve_dense(jac, r);
        double scale = 1.0;
        for (int halve = 0;; ++halve) {
            std::vector<double> cand = x;
            for (int k = 0; k < dim; ++k) cand[k] = x[k] - scale * dx[k];
            if (valid(cand)) {
                bool evaluated = true;
                std::vector<double> rc;
                try {
                    rc = resid(cand);
                } catch (const quadrature_error&) {
                    evaluated = false; // candidate too degenerate to integrate
                }
                if (evaluated) {
                    const double rcn = inf_norm(rc);
                    if (rcn < rn || rcn <= tol) {
                        x = std::move(cand);
                        r = std::move(rc);
                        rn = rcn;
                        break;
                    }
                }
            }
            if (halve >= 20)
                throw comb_error("inverse comb Newton stalled; residual " +
                                 format_residual(rn));
            scale *= 0.5;
        }
    }
    return unpack_triples(x, m);
}

/// Homotopy fallback: shrink all heights toward a mild comb, solve, and walk
/// the heights back up reusing each solution as the next initial guess.
std::vector<GapTriple> solve_inverse(const InverseTargets& targets, int depth = 0) {
    try {
        return solve_inverse_from(targets, initial_triples(targets));
    } catch (const comb_error&) {
        if (depth >= 6) throw;
    } catch (const quadrature_error&) {
        if (depth >= 6) throw;
    }
    InverseTargets milder = targets;
    for (double& h : milder.heights) h *= 0.5;
    std::vector<GapTriple> init = solve_inverse(milder, depth + 1);
    return solve_inverse_from(targets, std::move(init));
}

} // namespace

CombFit fit_set_to_comb(const CombDomain& comb) {
    validate_comb(comb);
    const InverseTargets targets = targets_from_comb(comb);
    CombFit fit{CombMap(solve_inverse(targets)), CombDomain{}, false};
    fit.comb = comb_from_map(fit.map, comb.n);
    fit.regular = on_degree_grid(fit.comb);
    return fit;
}

CirclePolynomial extremal_from_comb(const CombMap& map, int n) {
    if (n < 1) throw error("extremal synthesis: degree must be at least 1");
    if (!on_degree_grid(comb_from_map(map, n)))
        throw regularity_error(
            "extremal synthesis needs slit bases on the 2*pi/n grid");

    const int m = n + 1;
    std::vector<cdouble> samples(m);
    double scale = 0.0;
    for (int q = 0; q < m; ++q) {
        const double x = two_pi * q / m;
        const cdouble f = std::cos(0.5 * n * map.map(cdouble(x, 0.0)));
        samples[q] = std::exp(iu * (0.5 * n * x)) * f;
        scale = std::max(scale, std::abs(samples[q]));
    }
    std::vector<cdouble> coeffs(m);
    for (int k = 0; k < m; ++k) {
        cdouble acc = 0.0;
        for (int q = 0; q < m; ++q)
            acc += samples[q] * std::exp(-iu * (two_pi * k * q / m));
        coeffs[k] = acc / static_cast<double>(m);
    }
    CirclePolynomial poly(coeffs);

    const int checks = 2 * n + 2;
    std::vector<cdouble> direct(checks);
    for (int q = 0; q < checks; ++q) {
        const double y = two_pi * (q + 0.5) / checks;
        direct[q] = std::exp(iu * (0.5 * n * y)) * std::cos(0.5 * n * map.map(cdouble(y, 0.0)));
        scale = std::max(scale, std::abs(direct[q]));
    }
    for (int q = 0; q < checks; ++q) {
        const double y = two_pi * (q + 0.5) / checks;
        if (std::abs(poly.eval_angle(y) - direct[q]) > 1e-6 * scale)
            throw comb_error("extremal synthesis: interpolation residual check failed");
    }
    return poly;
}

RaiseResult raise_height(const CombDomain& comb, int slit_index, double increment) {
    validate_comb(comb);
    if (slit_index < 0 || slit_index >= static_cast<int>(comb.slits.size()))
        throw error("raise_height: slit index out of range");
    if (increment < 0.0) throw error("raise_height: negative increment");
    CombDomain raised = comb;
    raised.slits[slit_index].height += increment;
    CombFit fit = fit_set_to_comb(raised);
    return {std::move(raised), fit.map.arcs()};
}

EqualizeResult equalize_measure(const CombDomain& comb, double target) {
    validate_comb(comb);
    if (!(target > 0.0)) throw error("equalize_measure: target must be positive");
    ArcSet base_set = fit_set_to_comb(comb).map.arcs();
    const double base_measure = base_set.measure();
    if (target > base_measure + 1e-12)
        throw error("equalize_measure: target exceeds the undeformed measure");
    if (std::abs(target - base_measure) <= 1e-9) return {0.0, std::move(base_set)};

    // Warm-start each solve from the previous one: successive bisection
    // heights differ little, so Newton restarts near its solution.
    std::vector<GapTriple> warm;
    auto set_at = [&comb, &warm](double h) {
        CombDomain raised = comb;
        raised.slits[0].height += h;
        const InverseTargets targets = targets_from_comb(raised);
        std::vector<GapTriple> triples;
        if (!warm.empty()) {
            try {
                triples = solve_inverse_from(targets, warm);
            } catch (const comb_error&) {
            } catch (const quadrature_error&) {
            }
        }
        if (triples.empty()) triples = solve_inverse(targets);
        warm = triples;
        return CombMap(std::move(triples)).arcs();
    };

    double lo = 0.0, hi = 1.0;
    ArcSet hi_set = set_at(hi);
    for (int grow = 0; hi_set.measure() > target; ++grow) {
        if (grow >= 10)
            throw comb_error("equalize_measure: target not reached by raising slit 0");
        hi *= 2.0;
        hi_set = set_at(hi);
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        ArcSet s = set_at(mid);
        const double m = s.measure();
        if (std::abs(m - target) <= 1e-9) return {mid, std::move(s)};
        (m > target ? lo : hi) = mid;
        if (hi - lo < 1e-14) break;
    }
    throw comb_error("equalize_measure: bisection stalled before the tolerance");
}

CombDomain delete_slit(const CombDomain& comb, int slit_index) {
    validate_comb(comb);
    if (comb.slits.size() < 2) throw error("delete_slit: cannot delete the last slit");
    if (slit_index < 0 || slit_index >= static_cast<int>(comb.slits.size()))
        throw error("delete_slit: slit index out of range");
    CombDomain out = comb;
    out.slits.erase(out.slits.begin() + slit_index);
    return out;
}

cdouble single_gap_map(double s, cdouble z) {
    if (!(s > 0.0 && s < two_pi))
        throw error("single gap map: gap length must lie in (0, 2*pi)");
    if (z.imag() < 0.0) throw error("single gap map: point below the real axis");
    const double pi = std::numbers::pi_v<double>;
    const double k = std::floor((z.real() + pi) / two_pi);
    const cdouble zr = z - two_pi * k;
    const double l0 = std::tan(0.25 * s);
    const cdouble shift(0.0, std::log1p(l0 * l0));
    if (zr.imag() > 600.0) return zr + shift + two_pi * k;

    cdouble theta;
    if (zr.imag() == 0.0) {
        // Boundary limit from above, stabilized: with X = cos(x/2)/cos(s/4)
        // the chain collapses to 2i*acosh(X) on the gap and 2*sign(x)*acos(X)
        // on the bands (same branch as the interior formula).
        const double x = zr.real();
        const double ratio = std::cos(0.5 * x) / std::cos(0.25 * s);
        if (ratio >= 1.0)
            theta = cdouble(0.0, 2.0 * std::acosh(ratio));
        else
            theta = cdouble((x >= 0.0 ? 2.0 : -2.0) * std::acos(ratio), 0.0);
    } else {
        // nu = -i*mu; 1 - nu^2 = 4*zeta / ((1+zeta)^2 (1+l0^2)) avoids the
        // cancellation in i - mu that kills the naive chain at altitude.
        const cdouble zeta = std::exp(iu * zr);
        const cdouble one_minus_nu2 =
            4.0 * zeta / ((1.0 + zeta) * (1.0 + zeta) * (1.0 + l0 * l0));
        const cdouble nu = std::sqrt(1.0 - one_minus_nu2);
        const cdouble w = one_minus_nu2 / ((1.0 + nu) * (1.0 + nu));
        theta = -iu * std::log(w);
    }
    return theta + two_pi * k;
}

} // namespace remez
