#pragma once

#include <vector>

namespace calrev {

// max c'x subject to a_r'x <= rhs_r or a_r'x = rhs_r, x >= 0, rhs_r >= 0.
struct SimplexRow {
    std::vector<double> coeffs;
    bool equality = false;
    double rhs = 0.0;
};

struct SimplexProblem {
    std::vector<double> objective;
    std::vector<SimplexRow> rows;
    int num_vars() const { return static_cast<int>(objective.size()); }
};

struct SimplexSolution {
    std::vector<double> x;       // structural variables only
    double objective = 0.0;
    std::vector<int> basis;      // column per surviving row (slack cols >= num_vars)
    int iterations = 0;
};

// Dense two-phase tableau simplex with Bland's rule (entering: lowest-index
// improving column; leaving: lowest-index basic variable among minimum
// ratios), which makes the returned basic optimal solution deterministic on
// the problem's variable order. Intended for the small dense LPs built here.
SimplexSolution solve_simplex(const SimplexProblem& problem,
                              int max_iterations = 200000);

}  // namespace calrev
