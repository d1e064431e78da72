#include "remez/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "remez/errors.hpp"

namespace remez {

namespace {

constexpr double reduced_cost_tol = 1e-9;
constexpr double ratio_tol = 1e-11;
constexpr double feas_tol = 1e-7;
constexpr int stall_limit = 40;
constexpr int max_pivots = 20000;

/// Solve M v = rhs by Gaussian elimination with partial pivoting; M is destroyed.
std::vector<double> dense_solve(std::vector<std::vector<double>> M, std::vector<double> rhs) {
    const int d = static_cast<int>(rhs.size());
    for (int k = 0; k < d; ++k) {
        int piv = k;
        for (int i = k + 1; i < d; ++i)
            if (std::abs(M[i][k]) > std::abs(M[piv][k])) piv = i;
        if (std::abs(M[piv][k]) < 1e-13)
            throw solver_error("lp_solve: singular basis matrix");
        std::swap(M[piv], M[k]);
        std::swap(rhs[piv], rhs[k]);
        for (int i = k + 1; i < d; ++i) {
            double f = M[i][k] / M[k][k];
            if (f == 0.0) continue;
            for (int j = k; j < d; ++j) M[i][j] -= f * M[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    std::vector<double> v(d);
    for (int i = d - 1; i >= 0; --i) {
        double acc = rhs[i];
        for (int j = i + 1; j < d; ++j) acc -= M[i][j] * v[j];
        v[i] = acc / M[i][i];
    }
    return v;
}

/// State for the simplex on the dual: min cost . y s.t. [cols] y = rhs, y >= 0.
/// Columns 0..N-1 are the primal constraint rows (sign-flipped so rhs >= 0),
/// columns N..N+d-1 are artificials (identity).
struct DualSimplex {
    int d, n_real;
    const std::vector<LpConstraint>* cons;
    std::vector<double> row_sign;
    std::vector<double> rhs;
    std::vector<int> basis;

    double col(int j, int k) const {
        if (j >= n_real) return j - n_real == k ? 1.0 : 0.0;
        return row_sign[k] * (*cons)[j].a[k];
    }

    std::vector<std::vector<double>> basis_matrix() const {
        std::vector<std::vector<double>> B(d, std::vector<double>(d));
        for (int c = 0; c < d; ++c)
            for (int k = 0; k < d; ++k) B[k][c] = col(basis[c], k);
        return B;
    }

    std::vector<std::vector<double>> basis_matrix_t() const {
        std::vector<std::vector<double>> Bt(d, std::vector<double>(d));
        for (int c = 0; c < d; ++c)
            for (int k = 0; k < d; ++k) Bt[c][k] = col(basis[c], k);
        return Bt;
    }

    /// Run simplex iterations for the given column costs. Returns false if the
    /// objective is unbounded below. `allow_enter(j)` filters entering columns.
    /// With guard_artificials set (phase 2), a basic artificial that would rise
    /// above zero is pivoted out degenerately instead.
    template <typename CostFn, typename AllowFn>
    bool iterate(CostFn cost, AllowFn allow_enter, bool guard_artificials, int& pivots) {
        bool bland = false;
        int stall = 0;
        double last_obj = std::numeric_limits<double>::infinity();
        while (true) {
            if (++pivots > max_pivots)
                throw solver_error("lp_solve: simplex iteration limit reached");

            std::vector<double> cb(d);
            for (int c = 0; c < d; ++c) cb[c] = cost(basis[c]);
            std::vector<double> pi = dense_solve(basis_matrix_t(), cb);
            std::vector<double> xb = dense_solve(basis_matrix(), rhs);

            double obj = 0.0;
            for (int c = 0; c < d; ++c) obj += cb[c] * xb[c];
            if (obj < last_obj - 1e-13 * (1.0 + std::abs(obj))) {
                stall = 0;
                last_obj = obj;
            } else if (++stall > stall_limit) {
                bland = true;
            }

            int enter = -1;
            double best = -reduced_cost_tol;
            for (int j = 0; j < n_real + d; ++j) {
                if (!allow_enter(j)) continue;
                bool in_basis = false;
                for (int c = 0; c < d; ++c)
                    if (basis[c] == j) { in_basis = true; break; }
                if (in_basis) continue;
                double rc = cost(j);
                for (int k = 0; k < d; ++k) rc -= pi[k] * col(j, k);
                if (rc < best) {
                    enter = j;
                    best = rc;
                    if (bland) break; // first eligible index
                }
            }
            if (enter < 0) return true; // optimal

            std::vector<double> coln(d);
            for (int k = 0; k < d; ++k) coln[k] = col(enter, k);
            std::vector<double> w = dense_solve(basis_matrix(), coln);

            // Basic artificials must never rise above zero: pivot one out at once.
            int leave = -1;
            if (guard_artificials)
                for (int c = 0; c < d; ++c)
                    if (basis[c] >= n_real && w[c] < -ratio_tol) { leave = c; break; }
            if (leave < 0) {
                double best_t = std::numeric_limits<double>::infinity();
                for (int c = 0; c < d; ++c) {
                    if (w[c] <= ratio_tol) continue;
                    double t = xb[c] / w[c];
                    if (t < best_t - 1e-15 ||
                        (t < best_t + 1e-15 && (leave < 0 || basis[c] < basis[leave]))) {
                        best_t = t;
                        leave = c;
                    }
                }
                if (leave < 0) return false; // unbounded direction
            }
            basis[leave] = enter;
        }
    }
};

} // namespace

LpResult lp_solve(const std::vector<double>& objective, const std::vector<LpConstraint>& constraints) {
    const int d = static_cast<int>(objective.size());
    const int n = static_cast<int>(constraints.size());
    if (d == 0) throw std::invalid_argument("lp_solve: empty objective");
    for (const LpConstraint& c : constraints)
        if (static_cast<int>(c.a.size()) != d)
            throw std::invalid_argument("lp_solve: constraint dimension mismatch");

    DualSimplex s;
    s.d = d;
    s.n_real = n;
    s.cons = &constraints;
    s.row_sign.resize(d);
    s.rhs.resize(d);
    for (int k = 0; k < d; ++k) {
        s.row_sign[k] = objective[k] < 0.0 ? -1.0 : 1.0;
        s.rhs[k] = s.row_sign[k] * objective[k];
    }
    s.basis.resize(d);
    for (int k = 0; k < d; ++k) s.basis[k] = n + k;

    int pivots = 0;
    auto phase1_cost = [n](int j) { return j >= n ? 1.0 : 0.0; };
    s.iterate(phase1_cost, [](int) { return true; }, false, pivots);

    {
        std::vector<double> xb = dense_solve(s.basis_matrix(), s.rhs);
        double infeas = 0.0;
        for (int c = 0; c < d; ++c)
            if (s.basis[c] >= n) infeas += std::abs(xb[c]);
        if (infeas > feas_tol)
            throw solver_error("lp_solve: objective direction unbounded (dual infeasible)");
    }

    auto phase2_cost = [&](int j) { return j >= n ? 0.0 : constraints[j].b; };
    bool bounded = s.iterate(phase2_cost, [n](int j) { return j < n; }, true, pivots);
    if (!bounded) throw solver_error("lp_solve: infeasible constraint system (dual unbounded)");

    std::vector<double> xb = dense_solve(s.basis_matrix(), s.rhs);
    double dual_value = 0.0;
    for (int c = 0; c < d; ++c)
        if (s.basis[c] < n) dual_value += constraints[s.basis[c]].b * xb[c];

    std::vector<double> cb(d);
    for (int c = 0; c < d; ++c) cb[c] = phase2_cost(s.basis[c]);
    std::vector<double> pi = dense_solve(s.basis_matrix_t(), cb);

    LpResult r;
    r.x.resize(d);
    for (int k = 0; k < d; ++k) r.x[k] = s.row_sign[k] * pi[k];
    r.value = 0.0;
    for (int k = 0; k < d; ++k) r.value += objective[k] * r.x[k];
    for (int c = 0; c < d; ++c)
        if (s.basis[c] < n) r.basis.push_back(s.basis[c]);

    if (std::abs(r.value - dual_value) > 1e-9 * (1.0 + std::abs(dual_value)))
        throw solver_error("lp_solve: duality gap check failed");
    return r;
}

} // namespace remez
