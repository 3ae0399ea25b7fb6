#pragma once

#include <string>
#include <vector>

#include "calrev/instance.hpp"
#include "calrev/simplex.hpp"

namespace calrev {

enum class LpKind { CdlpN, CdlpS, DlpS, DlpN };

// One of the four deterministic LPs, with the variable layout recorded so
// solutions can be read back by (period, assortment) or (period, price).
struct LinearProgram {
    LpKind kind = LpKind::CdlpS;
    SimplexProblem problem;
    int periods = 1;      // CDLP-N / DLP-N: T, else 1
    int family_size = 0;  // CDLP kinds
    int n_prices = 0;     // DLP kinds
    std::vector<std::string> var_names;
    std::vector<std::string> row_names;
};

struct LpSolution {
    LpKind kind = LpKind::CdlpS;
    std::vector<double> x;
    double objective = 0.0;
    std::vector<int> basis;
    int periods = 1;
    int family_size = 0;
    int n_prices = 0;

    // CDLP access: value of x_t(S); CDLP-S ignores t.
    double value(int t, int index) const;
    // Entries of period t with mass above zeta, CDLP variable order.
    std::vector<std::pair<int, double>> period_support(int t,
                                                       double zeta = 1e-9) const;
};

// Non-stationary choice LP: T*|family| variables, n inventory rows, T
// equality rows (the empty assortment absorbs leftover mass, so equality is
// emitted directly).
LinearProgram build_cdlp_n(const Instance& inst, std::size_t max_variables = 100000);

// Stationary choice LP: |family| variables, inventory rows scaled by T, one
// equality convexity row.
LinearProgram build_cdlp_s(const Instance& inst);

// Single-item price LPs; convexity rows are inequalities in these two.
LinearProgram build_dlp_s(const Instance& inst);
LinearProgram build_dlp_n(const Instance& inst);

// Solve to a basic optimal solution and verify feasibility residuals
// (absolute, after row scaling) against `tolerance`.
LpSolution solve_lp(const LinearProgram& lp, double tolerance = 1e-9);

// r*_i: item i's contribution to the LP objective. Accepts CDLP-N and CDLP-S
// solutions; the components sum to the objective.
std::vector<double> item_contributions(const LpSolution& sol, const Instance& inst);

// The two-price structure of a basic optimal DLP-S solution.
struct TwoPriceSupport {
    int high = 0, low = 0;       // price indices, prices[high] >= prices[low]
    double x_high = 0.0, x_low = 0.0;
};
TwoPriceSupport two_price_support(const LpSolution& sol, double zeta = 1e-9);

// CPLEX-LP-format text, for cross-checking with external solvers.
std::string lp_format_text(const LinearProgram& lp);

}  // namespace calrev
