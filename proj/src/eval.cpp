#include "calrev/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "calrev/assumptions.hpp"
#include "calrev/common.hpp"

namespace calrev {

SubstitutionMode parse_mode(const std::string& text) {
    if (text == "static" || text == "static-substitution") return SubstitutionMode::Static;
    if (text == "dynamic" || text == "dynamic-substitution") return SubstitutionMode::Dynamic;
    throw ValidationError("unknown substitution mode '" + text + "'");
}

std::string mode_name(SubstitutionMode mode) {
    return mode == SubstitutionMode::Static ? "static" : "dynamic";
}

void validate_mode(const Instance& inst, SubstitutionMode mode,
                   bool skip_model_checks) {
    if (mode == SubstitutionMode::Static) return;
    if (!inst.integral())
        throw ValidationError("dynamic substitution requires integral single-purchase "
                              "demand and integer inventories");
    if (inst.choice.substitutable_by_construction() || skip_model_checks) return;
    int dp = inst.choice.data_periods();
    std::size_t pairs = inst.family.size() * inst.family.size() *
                        static_cast<std::size_t>(dp);
    if (pairs > 4000000)
        throw ValidationError("dynamic substitution: family too large to audit "
                              "substitutability; pass the skip flag to override");
    for (int t = 0; t < dp; ++t)
        if (!check_substitutability(inst.choice, inst.family, t).empty())
            throw ValidationError("dynamic substitution requires a substitutable model; "
                                  "the checker found violations");
}

namespace {

// In-stock products of S given inventory B; B = 0 exactly is out of stock.
Assortment in_stock_subset(const Assortment& s, const std::vector<double>& inv) {
    Assortment out;
    out.reserve(s.size());
    for (const auto& p : s)
        if (inv[p.item] > 0.0) out.push_back(p);
    return out;
}

struct PeriodTrace {
    int assortment = -1;
    std::vector<double> sales;
    double revenue = 0.0;
};

double run_one(const RandomizedCalendar& cal, const Instance& inst,
               SubstitutionMode mode, RngStream& rng,
               std::vector<PeriodTrace>* trace) {
    std::vector<double> inv = inst.inventories;
    double revenue = 0.0;
    for (int t = 0; t < cal.periods(); ++t) {
        rng.begin_period(static_cast<uint64_t>(t));
        const auto& entries = cal.dist[t];
        int s_index;
        if (entries.size() == 1) {
            s_index = entries[0].first;
        } else {
            double u = rng.next();
            double cum = 0.0;
            s_index = entries.back().first;
            for (const auto& [index, p] : entries) {
                cum += p;
                if (u < cum) {
                    s_index = index;
                    break;
                }
            }
        }
        const Assortment* offered = &inst.family.at(s_index);
        Assortment seen;
        if (mode == SubstitutionMode::Dynamic) {
            seen = in_stock_subset(*offered, inv);
            offered = &seen;
        }
        auto q = inst.choice.sample(t, *offered, rng);
        double period_rev = 0.0;
        std::vector<double> sales(offered->size(), 0.0);
        for (std::size_t k = 0; k < offered->size(); ++k) {
            const auto& p = (*offered)[k];
            double sold = std::min(inv[p.item], q[k]);
            if (sold <= 0.0) continue;
            inv[p.item] -= sold;
            sales[k] = sold;
            period_rev += inst.prices[p.price] * sold;
        }
        revenue += period_rev;
        if (trace) {
            PeriodTrace pt;
            pt.assortment = s_index;
            pt.sales = std::move(sales);
            pt.revenue = period_rev;
            trace->push_back(std::move(pt));
        }
    }
    return revenue;
}

std::string assortment_label(const Assortment& s) {
    std::ostringstream os;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k) os << '|';
        os << s[k].item << ':' << s[k].price;
    }
    if (s.empty()) os << "empty";
    return os.str();
}

}  // namespace

double simulate_one(const RandomizedCalendar& cal, const Instance& inst,
                    SubstitutionMode mode, RngStream& rng) {
    return run_one(cal, inst, mode, rng, nullptr);
}

RevenueStats simulate(const RandomizedCalendar& cal, const Instance& inst,
                      const SimOptions& opt) {
    if (cal.periods() != inst.horizon)
        throw ValidationError("calendar length does not match the horizon");
    cal.validate(inst.family);
    validate_mode(inst, opt.mode, opt.skip_model_checks);
    if (opt.replications < 1) throw ValidationError("replications must be >= 1");

    std::vector<double> revenue(opt.replications);
    auto worker = [&](int lo, int hi) {
        for (int r = lo; r < hi; ++r) {
            RngStream rng(opt.seed, static_cast<uint64_t>(r));
            revenue[r] = simulate_one(cal, inst, opt.mode, rng);
        }
    };
    int threads = std::max(1, opt.threads);
    if (threads == 1 || opt.replications < 2 * threads) {
        worker(0, opt.replications);
    } else {
        std::vector<std::thread> pool;
        int chunk = (opt.replications + threads - 1) / threads;
        for (int k = 0; k < threads; ++k) {
            int lo = k * chunk, hi = std::min(opt.replications, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    if (!opt.trace_csv_path.empty()) {
        std::ofstream out(opt.trace_csv_path);
        if (!out) throw ValidationError("cannot open trace file '" + opt.trace_csv_path + "'");
        out << "replication,period,assortment,sales,revenue\n";
        for (int r = 0; r < opt.replications; ++r) {
            std::vector<PeriodTrace> trace;
            RngStream rng(opt.seed, static_cast<uint64_t>(r));
            run_one(cal, inst, opt.mode, rng, &trace);
            for (int t = 0; t < static_cast<int>(trace.size()); ++t) {
                out << r << ',' << t << ','
                    << assortment_label(inst.family.at(trace[t].assortment)) << ',';
                for (std::size_t k = 0; k < trace[t].sales.size(); ++k) {
                    if (k) out << ';';
                    out << trace[t].sales[k];
                }
                out << ',' << trace[t].revenue << '\n';
            }
        }
    }

    // Deterministic sequential reduction in replication order.
    double sum = 0.0;
    for (double v : revenue) sum += v;
    double mean = sum / opt.replications;
    double ss = 0.0;
    for (double v : revenue) ss += (v - mean) * (v - mean);
    double stdev = opt.replications > 1 ? std::sqrt(ss / (opt.replications - 1)) : 0.0;

    RevenueStats stats;
    stats.mean = mean;
    stats.half_width = 1.96 * stdev / std::sqrt(static_cast<double>(opt.replications));
    stats.replications = opt.replications;
    stats.seed = opt.seed;
    stats.mode = opt.mode;
    return stats;
}

RevenueStats simulate(const DeterministicCalendar& cal, const Instance& inst,
                      const SimOptions& opt) {
    return simulate(cal.as_randomized(), inst, opt);
}

double exact_expected_revenue(const RandomizedCalendar& cal, const Instance& inst,
                              SubstitutionMode mode, const EvalOptions& opt) {
    if (cal.periods() != inst.horizon)
        throw ValidationError("calendar length does not match the horizon");
    cal.validate(inst.family);
    validate_mode(inst, mode, opt.skip_model_checks);

    const int data_periods = inst.choice.data_periods();
    // Joint-law cache per (effective period, family index).
    std::vector<std::map<int, std::vector<DemandAtom>>> atom_cache(data_periods);
    auto atoms_for = [&](int t, int s_index) -> const std::vector<DemandAtom>& {
        int te = data_periods == 1 ? 0 : t;
        auto it = atom_cache[te].find(s_index);
        if (it == atom_cache[te].end())
            it = atom_cache[te].emplace(s_index,
                                        inst.choice.atoms(t, inst.family.at(s_index))).first;
        return it->second;
    };

    std::map<std::vector<double>, double> states{{inst.inventories, 1.0}};
    double total_revenue = 0.0;
    for (int t = 0; t < inst.horizon; ++t) {
        std::map<std::vector<double>, double> next;
        for (const auto& [inv, pr] : states) {
            for (const auto& [s_index, zp] : cal.dist[t]) {
                if (zp <= 0.0) continue;
                int eff_index = s_index;
                if (mode == SubstitutionMode::Dynamic) {
                    eff_index = inst.family.index_of(in_stock_subset(inst.family.at(s_index), inv));
                    if (eff_index < 0)
                        throw NumericalError("in-stock subset escaped the family");
                }
                const auto& offered = inst.family.at(eff_index);
                for (const auto& atom : atoms_for(t, eff_index)) {
                    if (atom.prob <= 0.0) continue;
                    double weight = pr * zp * atom.prob;
                    std::vector<double> inv2 = inv;
                    double rev = 0.0;
                    for (std::size_t k = 0; k < offered.size(); ++k) {
                        double sold = std::min(inv2[offered[k].item], atom.quantity[k]);
                        if (sold <= 0.0) continue;
                        inv2[offered[k].item] -= sold;
                        rev += inst.prices[offered[k].price] * sold;
                    }
                    total_revenue += weight * rev;
                    next[std::move(inv2)] += weight;
                }
            }
        }
        if (next.size() > opt.state_cap)
            throw NumericalError("exact evaluation state space exceeded the cap of " +
                                 std::to_string(opt.state_cap) + " states");
        states.swap(next);
    }
    return total_revenue;
}

double exact_expected_revenue(const DeterministicCalendar& cal, const Instance& inst,
                              SubstitutionMode mode, const EvalOptions& opt) {
    return exact_expected_revenue(cal.as_randomized(), inst, mode, opt);
}

int DpValue::state_index(const std::vector<int>& inventory) const {
    int index = 0;
    for (std::size_t i = 0; i < radix.size(); ++i) index = index * radix[i] + inventory[i];
    return index;
}

DpValue optimal_dp(const Instance& inst, SubstitutionMode mode, const EvalOptions& opt) {
    if (!inst.integral())
        throw ValidationError("the DP oracle requires integral single-purchase demand");
    validate_mode(inst, mode, opt.skip_model_checks);

    DpValue dp;
    std::size_t n_states = 1;
    for (double b : inst.inventories) {
        dp.radix.push_back(static_cast<int>(std::llround(b)) + 1);
        n_states *= static_cast<std::size_t>(dp.radix.back());
        if (n_states > opt.state_cap)
            throw NumericalError("DP state space exceeds the cap of " +
                                 std::to_string(opt.state_cap) + " states");
    }
    const int T = inst.horizon;
    const int F = static_cast<int>(inst.family.size());
    const int n = inst.n_items;
    const int data_periods = inst.choice.data_periods();

    std::vector<std::map<int, std::vector<double>>> mean_cache(data_periods);
    auto means_for = [&](int t, int s_index) -> const std::vector<double>& {
        int te = data_periods == 1 ? 0 : t;
        auto it = mean_cache[te].find(s_index);
        if (it == mean_cache[te].end())
            it = mean_cache[te].emplace(s_index,
                                        inst.choice.mean_demand(t, inst.family.at(s_index))).first;
        return it->second;
    };

    dp.values.assign(T + 1, std::vector<double>(n_states, 0.0));
    dp.actions.assign(T, std::vector<int>(n_states, 0));

    std::vector<int> inv(n);
    for (int t = T - 1; t >= 0; --t) {
        const auto& tail = dp.values[t + 1];
        for (std::size_t state = 0; state < n_states; ++state) {
            std::size_t rem = state;
            for (int i = n - 1; i >= 0; --i) {
                inv[i] = static_cast<int>(rem % dp.radix[i]);
                rem /= dp.radix[i];
            }
            double best = -1.0;
            int best_action = 0;
            for (int s = 0; s < F; ++s) {
                const Assortment& full = inst.family.at(s);
                int eval_index = s;
                Assortment reduced;
                if (mode == SubstitutionMode::Dynamic) {
                    reduced.reserve(full.size());
                    for (const auto& p : full)
                        if (inv[p.item] > 0) reduced.push_back(p);
                    eval_index = inst.family.index_of(reduced);
                }
                const Assortment& offered = inst.family.at(eval_index);
                const auto& q = means_for(t, eval_index);
                double mass_used = 0.0, value = 0.0;
                for (std::size_t k = 0; k < offered.size(); ++k) {
                    const auto& p = offered[k];
                    if (inv[p.item] <= 0) continue;  // static mode: demand lost
                    int next_state = static_cast<int>(state);
                    int stride = 1;
                    for (int i = n - 1; i > p.item; --i) stride *= dp.radix[i];
                    next_state -= stride;
                    value += q[k] * (inst.prices[p.price] + tail[next_state]);
                    mass_used += q[k];
                }
                value += (1.0 - mass_used) * tail[state];
                if (value > best) {
                    best = value;
                    best_action = s;
                }
            }
            dp.values[t][state] = best;
            dp.actions[t][state] = best_action;
        }
    }
    std::vector<int> full(n);
    for (int i = 0; i < n; ++i) full[i] = dp.radix[i] - 1;
    dp.root_value = dp.values[0][dp.state_index(full)];
    return dp;
}

bool upper_bound_check(double exact_value, double opt_lp) {
    return exact_value <= opt_lp + 1e-9;
}

bool upper_bound_check(const RevenueStats& stats, double opt_lp) {
    return stats.mean - 4.0 * stats.half_width <= opt_lp;
}

}  // namespace calrev
