#include "calrev/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "calrev/common.hpp"

namespace calrev {

namespace {

constexpr double kPivotTol = 1e-10;

struct Tableau {
    int n_cols = 0;                       // excludes rhs
    std::vector<std::vector<double>> a;   // row-major, a[r][n_cols] is rhs
    std::vector<double> z;                // reduced costs, z[n_cols] is -objective
    std::vector<int> basis;               // column basic in each row
    std::vector<char> enterable;          // eligible entering columns

    void pivot(int row, int col) {
        auto& pr = a[row];
        double inv = 1.0 / pr[col];
        for (int j = 0; j <= n_cols; ++j) pr[j] *= inv;
        pr[col] = 1.0;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (static_cast<int>(r) == row) continue;
            double f = a[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j <= n_cols; ++j) a[r][j] -= f * pr[j];
            a[r][col] = 0.0;
        }
        double f = z[col];
        if (f != 0.0) {
            for (int j = 0; j <= n_cols; ++j) z[j] -= f * pr[j];
            z[col] = 0.0;
        }
        basis[row] = col;
        if (a[row][n_cols] < 0.0 && a[row][n_cols] > -1e-9) a[row][n_cols] = 0.0;
    }

    // Returns remaining iteration budget; throws on stall.
    int run(double rc_tol, int budget) {
        while (true) {
            int enter = -1;
            for (int j = 0; j < n_cols; ++j) {
                if (enterable[j] && z[j] > rc_tol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return budget;
            int leave = -1;
            double best_ratio = 0.0;
            for (std::size_t r = 0; r < a.size(); ++r) {
                double coef = a[r][enter];
                if (coef <= kPivotTol) continue;
                double ratio = std::max(a[r][n_cols], 0.0) / coef;
                if (leave < 0 || ratio < best_ratio - 1e-15 ||
                    (std::fabs(ratio - best_ratio) <= 1e-15 &&
                     basis[r] < basis[leave])) {
                    leave = static_cast<int>(r);
                    best_ratio = ratio;
                }
            }
            if (leave < 0) throw NumericalError("simplex: unbounded direction");
            pivot(leave, enter);
            if (--budget <= 0) throw NumericalError("simplex: iteration cap hit");
        }
    }
};

}  // namespace

SimplexSolution solve_simplex(const SimplexProblem& problem, int max_iterations) {
    const int n = problem.num_vars();
    const int m = static_cast<int>(problem.rows.size());
    for (const auto& row : problem.rows) {
        if (static_cast<int>(row.coeffs.size()) != n)
            throw ValidationError("simplex: row width mismatch");
        if (row.rhs < 0.0) throw ValidationError("simplex: negative rhs unsupported");
    }

    int n_slack = 0, n_art = 0;
    for (const auto& row : problem.rows) (row.equality ? n_art : n_slack)++;

    Tableau t;
    t.n_cols = n + n_slack + n_art;
    t.a.assign(m, std::vector<double>(t.n_cols + 1, 0.0));
    t.basis.assign(m, -1);
    t.enterable.assign(t.n_cols, 1);
    const int slack0 = n, art0 = n + n_slack;
    for (int j = art0; j < t.n_cols; ++j) t.enterable[j] = 0;  // artificials never re-enter

    int slack = slack0, art = art0;
    for (int r = 0; r < m; ++r) {
        const auto& row = problem.rows[r];
        for (int j = 0; j < n; ++j) t.a[r][j] = row.coeffs[j];
        t.a[r][t.n_cols] = row.rhs;
        int basic = row.equality ? art++ : slack++;
        t.a[r][basic] = 1.0;
        t.basis[r] = basic;
    }

    int budget = max_iterations;
    double feas_scale = 1.0;
    for (const auto& row : problem.rows) feas_scale = std::max(feas_scale, row.rhs);

    if (n_art > 0) {
        // Phase 1: maximize -(sum of artificials).
        t.z.assign(t.n_cols + 1, 0.0);
        for (int r = 0; r < m; ++r) {
            if (t.basis[r] < art0) continue;
            for (int j = 0; j <= t.n_cols; ++j) t.z[j] += t.a[r][j];
            t.z[t.basis[r]] = 0.0;
        }
        budget = t.run(1e-9, budget);
        double infeas = t.z[t.n_cols];  // equals sum of artificials at optimum
        if (infeas > 1e-7 * feas_scale)
            throw NumericalError("simplex: phase 1 ended infeasible");
        // Drive leftover artificials out of the basis; drop redundant rows.
        for (int r = static_cast<int>(t.a.size()) - 1; r >= 0; --r) {
            if (t.basis[r] < art0) continue;
            int col = -1;
            for (int j = 0; j < art0; ++j)
                if (std::fabs(t.a[r][j]) > 1e-7) { col = j; break; }
            if (col >= 0) {
                t.pivot(r, col);
            } else {
                t.a.erase(t.a.begin() + r);
                t.basis.erase(t.basis.begin() + r);
            }
        }
    }

    // Phase 2 objective, priced against the current basis.
    t.z.assign(t.n_cols + 1, 0.0);
    for (int j = 0; j < n; ++j) t.z[j] = problem.objective[j];
    for (std::size_t r = 0; r < t.a.size(); ++r) {
        int b = t.basis[r];
        double cb = b < n ? problem.objective[b] : 0.0;
        if (cb == 0.0) continue;
        for (int j = 0; j <= t.n_cols; ++j) t.z[j] -= cb * t.a[r][j];
        t.z[b] = 0.0;
    }
    double obj_scale = 1.0;
    for (int j = 0; j < n; ++j) obj_scale = std::max(obj_scale, std::fabs(problem.objective[j]));
    budget = t.run(1e-11 * obj_scale + 1e-12, budget);

    SimplexSolution sol;
    sol.x.assign(n, 0.0);
    for (std::size_t r = 0; r < t.a.size(); ++r)
        if (t.basis[r] < n) sol.x[t.basis[r]] = std::max(t.a[r][t.n_cols], 0.0);
    sol.objective = 0.0;
    for (int j = 0; j < n; ++j) sol.objective += problem.objective[j] * sol.x[j];
    sol.basis = t.basis;
    sol.iterations = max_iterations - budget;
    return sol;
}

}  // namespace calrev
