#include "calrev/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "calrev/common.hpp"

namespace calrev {

namespace {

// Objective and inventory coefficients of one assortment column.
struct ColumnWeights {
    double revenue = 0.0;                 // sum of p_j q_t(i,j,S)
    std::vector<std::pair<int, double>> item_use;  // (item, sum of q over its products)
};

ColumnWeights column_weights(const Instance& inst, int t, const Assortment& s) {
    ColumnWeights w;
    auto q = inst.choice.mean_demand(t, s);
    for (std::size_t k = 0; k < s.size(); ++k) {
        w.revenue += inst.prices[s[k].price] * q[k];
        bool merged = false;
        for (auto& [item, use] : w.item_use)
            if (item == s[k].item) {
                use += q[k];
                merged = true;
                break;
            }
        if (!merged) w.item_use.push_back({s[k].item, q[k]});
    }
    return w;
}

// q_t(j) on the singleton assortment {(0, j)} of a single-item instance.
double singleton_mean(const Instance& inst, int t, int j) {
    Assortment s{{0, j}};
    if (!inst.family.contains(s))
        throw ValidationError("single-item LP requires every price singleton in the family");
    return inst.choice.mean_demand(t, s).at(0);
}

}  // namespace

LinearProgram build_cdlp_n(const Instance& inst, std::size_t max_variables) {
    inst.validate();
    const int T = inst.horizon;
    const int F = static_cast<int>(inst.family.size());
    if (static_cast<std::size_t>(T) * F > max_variables)
        throw ValidationError("CDLP-N would need " + std::to_string(T * F) +
                              " variables, above the cap of " +
                              std::to_string(max_variables));
    LinearProgram lp;
    lp.kind = LpKind::CdlpN;
    lp.periods = T;
    lp.family_size = F;
    lp.problem.objective.assign(static_cast<std::size_t>(T) * F, 0.0);
    lp.problem.rows.assign(inst.n_items + T, SimplexRow{});
    for (int i = 0; i < inst.n_items; ++i) {
        lp.problem.rows[i].coeffs.assign(static_cast<std::size_t>(T) * F, 0.0);
        lp.problem.rows[i].rhs = inst.inventories[i];
        lp.row_names.push_back("inv_" + std::to_string(i));
    }
    for (int t = 0; t < T; ++t) {
        auto& row = lp.problem.rows[inst.n_items + t];
        row.coeffs.assign(static_cast<std::size_t>(T) * F, 0.0);
        row.equality = true;
        row.rhs = 1.0;
        lp.row_names.push_back("cvx_" + std::to_string(t));
    }
    for (int t = 0; t < T; ++t) {
        for (int s = 0; s < F; ++s) {
            int col = t * F + s;
            auto w = column_weights(inst, t, inst.family.at(s));
            lp.problem.objective[col] = w.revenue;
            for (const auto& [item, use] : w.item_use)
                lp.problem.rows[item].coeffs[col] = use;
            lp.problem.rows[inst.n_items + t].coeffs[col] = 1.0;
            lp.var_names.push_back("x_t" + std::to_string(t) + "_s" + std::to_string(s));
        }
    }
    return lp;
}

LinearProgram build_cdlp_s(const Instance& inst) {
    inst.validate();
    if (!inst.stationary)
        throw ValidationError("CDLP-S requires a stationary instance");
    const int F = static_cast<int>(inst.family.size());
    const double T = inst.horizon;
    LinearProgram lp;
    lp.kind = LpKind::CdlpS;
    lp.family_size = F;
    lp.problem.objective.assign(F, 0.0);
    lp.problem.rows.assign(inst.n_items + 1, SimplexRow{});
    for (int i = 0; i < inst.n_items; ++i) {
        lp.problem.rows[i].coeffs.assign(F, 0.0);
        lp.problem.rows[i].rhs = inst.inventories[i];
        lp.row_names.push_back("inv_" + std::to_string(i));
    }
    auto& cvx = lp.problem.rows[inst.n_items];
    cvx.coeffs.assign(F, 0.0);
    cvx.equality = true;
    cvx.rhs = 1.0;
    lp.row_names.push_back("cvx");
    for (int s = 0; s < F; ++s) {
        auto w = column_weights(inst, 0, inst.family.at(s));
        lp.problem.objective[s] = T * w.revenue;
        for (const auto& [item, use] : w.item_use)
            lp.problem.rows[item].coeffs[s] = T * use;
        cvx.coeffs[s] = 1.0;
        lp.var_names.push_back("x_s" + std::to_string(s));
    }
    return lp;
}

LinearProgram build_dlp_s(const Instance& inst) {
    inst.validate();
    if (inst.n_items != 1) throw ValidationError("DLP-S requires a single item");
    if (!inst.stationary) throw ValidationError("DLP-S requires a stationary instance");
    const int m = inst.n_prices();
    const double T = inst.horizon;
    LinearProgram lp;
    lp.kind = LpKind::DlpS;
    lp.n_prices = m;
    lp.problem.objective.assign(m, 0.0);
    lp.problem.rows.assign(2, SimplexRow{});
    lp.problem.rows[0].coeffs.assign(m, 0.0);
    lp.problem.rows[0].rhs = inst.inventories[0];
    lp.problem.rows[1].coeffs.assign(m, 1.0);
    lp.problem.rows[1].rhs = 1.0;  // inequality, per the cited form
    lp.row_names = {"inv", "cvx"};
    for (int j = 0; j < m; ++j) {
        double q = singleton_mean(inst, 0, j);
        lp.problem.objective[j] = T * inst.prices[j] * q;
        lp.problem.rows[0].coeffs[j] = T * q;
        lp.var_names.push_back("x_p" + std::to_string(j));
    }
    return lp;
}

LinearProgram build_dlp_n(const Instance& inst) {
    inst.validate();
    if (inst.n_items != 1) throw ValidationError("DLP-N requires a single item");
    const int m = inst.n_prices();
    const int T = inst.horizon;
    LinearProgram lp;
    lp.kind = LpKind::DlpN;
    lp.periods = T;
    lp.n_prices = m;
    lp.problem.objective.assign(static_cast<std::size_t>(T) * m, 0.0);
    lp.problem.rows.assign(1 + T, SimplexRow{});
    lp.problem.rows[0].coeffs.assign(static_cast<std::size_t>(T) * m, 0.0);
    lp.problem.rows[0].rhs = inst.inventories[0];
    lp.row_names.push_back("inv");
    for (int t = 0; t < T; ++t) {
        auto& row = lp.problem.rows[1 + t];
        row.coeffs.assign(static_cast<std::size_t>(T) * m, 0.0);
        row.rhs = 1.0;  // inequality
        lp.row_names.push_back("cvx_" + std::to_string(t));
    }
    for (int t = 0; t < T; ++t) {
        for (int j = 0; j < m; ++j) {
            int col = t * m + j;
            double q = singleton_mean(inst, t, j);
            lp.problem.objective[col] = inst.prices[j] * q;
            lp.problem.rows[0].coeffs[col] = q;
            lp.problem.rows[1 + t].coeffs[col] = 1.0;
            lp.var_names.push_back("x_t" + std::to_string(t) + "_p" + std::to_string(j));
        }
    }
    return lp;
}

LpSolution solve_lp(const LinearProgram& lp, double tolerance) {
    auto raw = solve_simplex(lp.problem);
    // Residual audit, absolute after scaling each row by its largest coefficient.
    for (std::size_t r = 0; r < lp.problem.rows.size(); ++r) {
        const auto& row = lp.problem.rows[r];
        double lhs = 0.0, scale = std::fabs(row.rhs);
        for (int j = 0; j < lp.problem.num_vars(); ++j) {
            lhs += row.coeffs[j] * raw.x[j];
            scale = std::max(scale, std::fabs(row.coeffs[j]));
        }
        double resid = row.equality ? std::fabs(lhs - row.rhs)
                                    : std::max(lhs - row.rhs, 0.0);
        if (resid > tolerance * std::max(scale, 1.0))
            throw NumericalError("LP solution violates row " + lp.row_names[r] +
                                 " by " + std::to_string(resid));
    }
    LpSolution sol;
    sol.kind = lp.kind;
    sol.x = std::move(raw.x);
    sol.objective = raw.objective;
    sol.basis = std::move(raw.basis);
    sol.periods = lp.periods;
    sol.family_size = lp.family_size;
    sol.n_prices = lp.n_prices;
    return sol;
}

double LpSolution::value(int t, int index) const {
    if (kind == LpKind::CdlpS) return x[index];
    if (kind == LpKind::CdlpN) return x[static_cast<std::size_t>(t) * family_size + index];
    if (kind == LpKind::DlpS) return x[index];
    return x[static_cast<std::size_t>(t) * n_prices + index];
}

std::vector<std::pair<int, double>> LpSolution::period_support(int t,
                                                               double zeta) const {
    std::vector<std::pair<int, double>> out;
    int width = (kind == LpKind::CdlpN || kind == LpKind::CdlpS) ? family_size : n_prices;
    for (int k = 0; k < width; ++k) {
        double v = value(t, k);
        if (v > zeta) out.push_back({k, v});
    }
    return out;
}

std::vector<double> item_contributions(const LpSolution& sol, const Instance& inst) {
    if (sol.kind != LpKind::CdlpN && sol.kind != LpKind::CdlpS)
        throw ValidationError("item contributions require a CDLP solution");
    std::vector<double> r(inst.n_items, 0.0);
    int T = sol.kind == LpKind::CdlpN ? sol.periods : 1;
    double period_weight = sol.kind == LpKind::CdlpN ? 1.0 : inst.horizon;
    for (int t = 0; t < T; ++t) {
        for (int s = 0; s < sol.family_size; ++s) {
            double xv = sol.value(t, s);
            if (xv <= 0.0) continue;
            const auto& set = inst.family.at(s);
            auto q = inst.choice.mean_demand(t, set);
            for (std::size_t k = 0; k < set.size(); ++k)
                r[set[k].item] += period_weight * xv * inst.prices[set[k].price] * q[k];
        }
    }
    return r;
}

TwoPriceSupport two_price_support(const LpSolution& sol, double zeta) {
    if (sol.kind != LpKind::DlpS)
        throw ValidationError("two-price support requires a DLP-S solution");
    std::vector<std::pair<int, double>> support;
    for (int j = 0; j < sol.n_prices; ++j)
        if (sol.x[j] > zeta) support.push_back({j, sol.x[j]});
    if (support.empty())
        throw ValidationError("DLP-S solution has empty support");
    if (support.size() > 2)
        throw NumericalError("DLP-S solution has " + std::to_string(support.size()) +
                             " nonzeros; a basic solution carries at most two");
    TwoPriceSupport tp;
    if (support.size() == 1) {
        tp.high = tp.low = support[0].first;
        tp.x_high = support[0].second;
        tp.x_low = 0.0;
    } else {
        // Lower ladder index is the higher price.
        tp.high = support[0].first;
        tp.x_high = support[0].second;
        tp.low = support[1].first;
        tp.x_low = support[1].second;
    }
    return tp;
}

std::string lp_format_text(const LinearProgram& lp) {
    std::ostringstream os;
    os.precision(17);
    os << "Maximize\n obj:";
    for (int j = 0; j < lp.problem.num_vars(); ++j) {
        double c = lp.problem.objective[j];
        if (c == 0.0) continue;
        os << (c >= 0 ? " + " : " - ") << std::fabs(c) << " " << lp.var_names[j];
    }
    os << "\nSubject To\n";
    for (std::size_t r = 0; r < lp.problem.rows.size(); ++r) {
        const auto& row = lp.problem.rows[r];
        os << " " << lp.row_names[r] << ":";
        bool any = false;
        for (int j = 0; j < lp.problem.num_vars(); ++j) {
            double c = row.coeffs[j];
            if (c == 0.0) continue;
            os << (c >= 0 ? " + " : " - ") << std::fabs(c) << " " << lp.var_names[j];
            any = true;
        }
        if (!any) os << " 0 " << lp.var_names.front();
        os << (row.equality ? " = " : " <= ") << row.rhs << "\n";
    }
    os << "End\n";
    return os.str();
}

}  // namespace calrev
