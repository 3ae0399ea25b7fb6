#include "calrev/policies.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "calrev/assumptions.hpp"
#include "calrev/bounds.hpp"
#include "calrev/common.hpp"

namespace calrev {

namespace {

void require_kind(const LpSolution& sol, LpKind kind, const char* what) {
    if (sol.kind != kind) throw ValidationError(std::string(what) + ": wrong LP kind");
}

}  // namespace

RandomizedCalendar lp_solution_policy(const LpSolution& sol, const Instance& inst) {
    if (sol.kind != LpKind::CdlpN && sol.kind != LpKind::CdlpS)
        throw ValidationError("lp_solution_policy: CDLP solution required");
    RandomizedCalendar z;
    z.dist.resize(inst.horizon);
    if (sol.kind == LpKind::CdlpS) {
        auto row = clean_distribution(sol.period_support(0));
        for (auto& period : z.dist) period = row;
    } else {
        for (int t = 0; t < inst.horizon; ++t)
            z.dist[t] = clean_distribution(sol.period_support(t));
    }
    return z;
}

RandomizedCalendar stationary_randomized_policy(const LpSolution& sol,
                                                const Instance& inst) {
    require_kind(sol, LpKind::CdlpS, "stationary_randomized_policy");
    return lp_solution_policy(sol, inst);
}

RandomizedCalendar nonstationary_threshold_policy(const LpSolution& sol,
                                                  const Instance& inst) {
    require_kind(sol, LpKind::CdlpN, "nonstationary_threshold_policy");
    auto r = item_contributions(sol, inst);
    std::vector<double> threshold(inst.n_items);
    for (int i = 0; i < inst.n_items; ++i)
        threshold[i] = r[i] / (2.0 * inst.inventories[i]);

    RandomizedCalendar z;
    z.dist.resize(inst.horizon);
    for (int t = 0; t < inst.horizon; ++t) {
        std::map<int, double> mass;
        double total = 0.0;
        for (const auto& [s_index, x] : sol.period_support(t)) {
            Assortment survivors;
            for (const auto& p : inst.family.at(s_index))
                if (inst.prices[p.price] > threshold[p.item]) survivors.push_back(p);
            int d_index = inst.family.index_of(survivors);
            if (d_index < 0)
                throw NumericalError("discarded assortment escaped the family");
            mass[d_index] += x;
            total += x;
        }
        if (total < 1.0) mass[0] += 1.0 - total;  // leftover mass offers nothing
        std::vector<std::pair<int, double>> entries(mass.begin(), mass.end());
        z.dist[t] = clean_distribution(std::move(entries));
    }
    return z;
}

RandomizedCalendar large_inventory_policy(const LpSolution& sol, const Instance& inst,
                                          std::vector<std::string>* warnings) {
    require_kind(sol, LpKind::CdlpN, "large_inventory_policy");
    double b_min = inst.min_inventory();
    double delta = reservation_delta(b_min);
    if (b_min < 6.0 && warnings)
        warnings->push_back("large-inventory policy built with b_min = " +
                            std::to_string(b_min) +
                            " < 6; the (1 - delta) guarantee does not apply");
    double scale = 1.0 - std::min(delta, 1.0);
    RandomizedCalendar z;
    z.dist.resize(inst.horizon);
    for (int t = 0; t < inst.horizon; ++t) {
        std::map<int, double> mass;
        double placed = 0.0;
        for (const auto& [s_index, x] : sol.period_support(t)) {
            if (s_index == 0) continue;  // empty set absorbs the remainder below
            mass[s_index] += scale * x;
            placed += scale * x;
        }
        mass[0] += 1.0 - placed;
        std::vector<std::pair<int, double>> entries(mass.begin(), mass.end());
        z.dist[t] = clean_distribution(std::move(entries));
    }
    return z;
}

DeterministicCalendar high_low_calendar(const Instance& inst, const HighLowOptions& opt) {
    if (inst.n_items != 1) throw ValidationError("high-low calendar requires one item");
    if (!inst.stationary) throw ValidationError("high-low calendar requires stationarity");
    if (!opt.override_comparability_check) {
        auto report = check_assumptions(inst);
        if (!report.comparability.empty())
            throw ValidationError("per-price demand CDFs are not pairwise ordered; "
                                  "pass the override flag to build the calendar anyway");
    }
    auto sol = solve_lp(build_dlp_s(inst));
    const int T = inst.horizon;
    DeterministicCalendar cal;
    cal.plan.assign(T, 0);
    if (sol.objective <= kSupportTol) return cal;  // nothing worth selling

    auto tp = two_price_support(sol);
    Assortment high{{0, tp.high}}, low{{0, tp.low}};
    int high_index = inst.family.index_of(high);
    int low_index = inst.family.index_of(low);
    double s_high = T * tp.x_high / (tp.x_high + tp.x_low);
    int lo = static_cast<int>(std::floor(s_high));
    int hi = static_cast<int>(std::ceil(s_high));
    lo = std::clamp(lo, 0, T);
    hi = std::clamp(hi, 0, T);

    auto build = [&](int s_star) {
        DeterministicCalendar c;
        c.plan.assign(T, low_index);
        for (int t = 0; t < s_star; ++t) c.plan[t] = high_index;
        return c;
    };
    if (lo == hi) return build(lo);

    auto floor_cal = build(lo), ceil_cal = build(hi);
    double v_floor = 0.0, v_ceil = 0.0;
    bool exact_ok = true;
    try {
        v_floor = exact_expected_revenue(floor_cal, inst, SubstitutionMode::Static,
                                         {opt.state_cap, true});
        v_ceil = exact_expected_revenue(ceil_cal, inst, SubstitutionMode::Static,
                                        {opt.state_cap, true});
    } catch (const NumericalError&) {
        exact_ok = false;
    }
    if (!exact_ok) {
        // Paired simulation: both candidates see the same demand draws.
        SimOptions sim;
        sim.replications = opt.fallback_reps;
        sim.seed = opt.seed;
        sim.skip_model_checks = true;
        v_floor = simulate(floor_cal, inst, sim).mean;
        v_ceil = simulate(ceil_cal, inst, sim).mean;
    }
    return v_ceil > v_floor + 1e-12 ? ceil_cal : floor_cal;
}

DeterministicCalendar bid_price_calendar(const Instance& inst) {
    if (inst.n_items != 1) throw ValidationError("bid-price calendar requires one item");
    auto sol = solve_lp(build_dlp_n(inst));
    double threshold = sol.objective / (2.0 * inst.inventories[0]);
    DeterministicCalendar cal;
    cal.plan.assign(inst.horizon, 0);
    for (int t = 0; t < inst.horizon; ++t) {
        int best_j = -1;
        double best_value = 0.0;
        for (int j = 0; j < inst.n_prices(); ++j) {
            Assortment s{{0, j}};
            if (!inst.family.contains(s)) continue;
            double value = (inst.prices[j] - threshold) * inst.choice.mean_demand(t, s)[0];
            // The offer-nothing option is worth 0 and loses ties to a price;
            // among prices, the lower index (higher price) wins ties.
            if (value > best_value || (best_j < 0 && value >= best_value)) {
                best_j = j;
                best_value = value;
            }
        }
        if (best_j >= 0 && best_value >= 0.0)
            cal.plan[t] = inst.family.index_of({{0, best_j}});
    }
    return cal;
}

DeterministicCalendar myopic_policy(const Instance& inst) {
    DeterministicCalendar cal;
    cal.plan.assign(inst.horizon, 0);
    const int data_periods = inst.choice.data_periods();
    for (int t = 0; t < (data_periods == 1 ? 1 : inst.horizon); ++t) {
        int best = 0;
        double best_value = 0.0;
        for (int s = 0; s < static_cast<int>(inst.family.size()); ++s) {
            const auto& set = inst.family.at(s);
            auto q = inst.choice.mean_demand(t, set);
            double value = 0.0;
            for (std::size_t k = 0; k < set.size(); ++k)
                value += inst.prices[set[k].price] * q[k];
            if (value > best_value + 1e-15) {
                best = s;
                best_value = value;
            }
        }
        if (data_periods == 1) {
            cal.plan.assign(inst.horizon, best);
        } else {
            cal.plan[t] = best;
        }
    }
    return cal;
}

}  // namespace calrev
