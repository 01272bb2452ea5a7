// lp.hpp
// Dense two-phase simplex for small equality-form linear programs:
//   minimize c'x  subject to  Ax = b, x >= 0.
//
// Problems in this library are tiny (tens of rows, at most a few thousand
// columns), so a plain tableau with Dantzig pricing and a Bland fallback is
// accurate and fast enough.

#pragma once

#include <Eigen/Dense>

#include <limits>
#include <vector>

#include "contextlab/errors.hpp"

namespace contextlab {

enum class LpStatus { optimal, infeasible, unbounded, numerical_failure };

struct LpResult {
    LpStatus status = LpStatus::numerical_failure;
    double objective = std::numeric_limits<double>::quiet_NaN();
    Eigen::VectorXd x;
};

namespace lpdetail {

inline constexpr double kPivotTol = 1e-9;
inline constexpr double kFeasTol = 1e-9;

// One simplex phase on an explicit tableau. Rows 0..m-1 are constraints,
// row m is the reduced-cost row. basis[i] is the column basic in row i.
// Returns false on iteration blowup.
inline bool run_simplex(Eigen::MatrixXd& t, std::vector<int>& basis, int ncols) {
    const int m = static_cast<int>(t.rows()) - 1;
    const long max_iters = 2000L + 50L * static_cast<long>(ncols);
    const long bland_after = max_iters / 2;
    for (long iter = 0; iter < max_iters; ++iter) {
        // Entering column.
        int enter = -1;
        if (iter < bland_after) {
            double best = -kPivotTol;
            for (int j = 0; j < ncols; ++j)
                if (t(m, j) < best) { best = t(m, j); enter = j; }
        } else {
            for (int j = 0; j < ncols; ++j)
                if (t(m, j) < -kPivotTol) { enter = j; break; }
        }
        if (enter < 0) return true;  // optimal

        // Ratio test.
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            const double a = t(i, enter);
            if (a > kPivotTol) {
                const double ratio = t(i, ncols) / a;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 &&
                     (leave < 0 || basis[i] > basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) return true;  // unbounded; caller inspects costs

        // Pivot.
        const double piv = t(leave, enter);
        t.row(leave) /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = t(i, enter);
            if (f != 0.0) t.row(i) -= f * t.row(leave);
        }
        basis[static_cast<std::size_t>(leave)] = enter;
    }
    return false;
}

}  // namespace lpdetail

// Solves min c'x s.t. Ax = b, x >= 0.
inline LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                         const Eigen::VectorXd& c) {
    using namespace lpdetail;
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (b.size() != m || c.size() != n)
        throw DimensionMismatch("solve_lp: inconsistent dimensions");

    // Tableau: [A | I_artificial | rhs], with b flipped nonnegative.
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
    for (int i = 0; i < m; ++i) {
        const double sign = (b[i] < 0.0) ? -1.0 : 1.0;
        t.block(i, 0, 1, n) = sign * A.row(i);
        t(i, n + i) = 1.0;
        t(i, n + m) = sign * b[i];
    }
    std::vector<int> basis(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

    // Phase 1: minimize sum of artificials.
    for (int j = 0; j < n + m; ++j)
        t(m, j) = (j >= n) ? 1.0 : 0.0;
    for (int i = 0; i < m; ++i) t.row(m) -= t.row(i);  // price out basis

    if (!run_simplex(t, basis, n + m)) return {LpStatus::numerical_failure, 0.0, {}};
    const double phase1 = -t(m, n + m);
    if (phase1 > 1e-7) return {LpStatus::infeasible, 0.0, {}};

    // Drive artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
        if (basis[static_cast<std::size_t>(i)] < n) continue;
        int enter = -1;
        for (int j = 0; j < n; ++j)
            if (std::abs(t(i, j)) > 1e-7) { enter = j; break; }
        if (enter < 0) continue;  // redundant row, stays with zero artificial
        const double piv = t(i, enter);
        t.row(i) /= piv;
        for (int k = 0; k <= m; ++k) {
            if (k == i) continue;
            const double f = t(k, enter);
            if (f != 0.0) t.row(k) -= f * t.row(i);
        }
        basis[static_cast<std::size_t>(i)] = enter;
    }

    // Phase 2: original objective, artificial columns disabled.
    Eigen::MatrixXd t2 = Eigen::MatrixXd::Zero(m + 1, n + 1);
    t2.block(0, 0, m, n) = t.block(0, 0, m, n);
    t2.block(0, n, m, 1) = t.block(0, n + m, m, 1);
    for (int j = 0; j < n; ++j) t2(m, j) = c[j];
    t2(m, n) = 0.0;
    for (int i = 0; i < m; ++i) {
        const int bj = basis[static_cast<std::size_t>(i)];
        if (bj < n && std::abs(t2(m, bj)) > 0.0) t2.row(m) -= t2(m, bj) * t2.row(i);
    }
    // A row whose basic variable is still artificial is redundant: at the
    // phase-1 optimum it is numerically zero over the real columns, so no
    // pivot can select it.
    if (!run_simplex(t2, basis, n)) return {LpStatus::numerical_failure, 0.0, {}};

    // Unboundedness check: a negative reduced cost with no positive column.
    for (int j = 0; j < n; ++j) {
        if (t2(m, j) < -1e-7) {
            bool has_positive = false;
            for (int i = 0; i < m; ++i)
                if (t2(i, j) > kPivotTol) { has_positive = true; break; }
            if (!has_positive) return {LpStatus::unbounded, 0.0, {}};
        }
    }

    LpResult res;
    res.status = LpStatus::optimal;
    res.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) {
        const int bj = basis[static_cast<std::size_t>(i)];
        if (bj < n) res.x[bj] = t2(i, n);
    }
    res.objective = c.dot(res.x);
    return res;
}

// Feasibility of Ax = b, x >= 0 (phase 1 only).
inline bool lp_feasible(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    const Eigen::VectorXd c = Eigen::VectorXd::Zero(A.cols());
    const LpResult r = solve_lp(A, b, c);
    if (r.status == LpStatus::numerical_failure)
        throw SolverError("lp_feasible: simplex did not converge");
    return r.status == LpStatus::optimal;
}

}  // namespace contextlab
