#include "calrev/derand.hpp"

#include <cmath>
#include <sstream>

#include "calrev/common.hpp"

namespace calrev {

long long sample_count(const Instance& inst, double opt_lp, double epsilon) {
    if (!(opt_lp > 0.0)) throw ValidationError("sample_count: opt_lp must be positive");
    if (!(epsilon > 0.0)) throw ValidationError("sample_count: epsilon must be positive");
    double sum_b = 0.0;
    for (double b : inst.inventories) sum_b += b;
    double t = inst.horizon;
    double value = (t * t * sum_b * sum_b * inst.max_price() * inst.max_price()) /
                   (opt_lp * opt_lp) / (epsilon * epsilon) *
                   (std::log(static_cast<double>(inst.n_items)) + std::log(t));
    if (!std::isfinite(value)) throw NumericalError("sample_count overflowed");
    double k = std::ceil(value);
    return k < 1.0 ? 1 : static_cast<long long>(k);
}

namespace {

double estimate_sampled(const RandomizedCalendar& z, const Instance& inst,
                        const DerandConfig& cfg, int period, long long k_count) {
    // Common random numbers: candidates within a period reuse the same
    // replication keys, so their estimates differ only through the fixed
    // assortment.
    double total = 0.0;
    for (long long k = 0; k < k_count; ++k) {
        RngStream rng(cfg.seed,
                      static_cast<uint64_t>(period) * static_cast<uint64_t>(k_count) +
                          static_cast<uint64_t>(k));
        total += simulate_one(z, inst, cfg.mode, rng);
    }
    return total / static_cast<double>(k_count);
}

}  // namespace

DerandResult derandomize(const RandomizedCalendar& z, const Instance& inst,
                         double opt_lp, const DerandConfig& config) {
    z.validate(inst.family);
    validate_mode(inst, config.mode, config.skip_model_checks);
    if (z.periods() != inst.horizon)
        throw ValidationError("calendar length does not match the horizon");

    DerandResult result;
    EvalOptions eval_opt{config.state_cap, true};

    bool use_exact = false;
    if (config.prefer_exact) {
        try {
            exact_expected_revenue(z, inst, config.mode, eval_opt);
            use_exact = true;
        } catch (const NumericalError&) {
            use_exact = false;
        }
    }
    result.used_exact = use_exact;
    if (!use_exact) {
        long long k = config.k_override > 0 ? config.k_override
                                            : sample_count(inst, opt_lp, config.epsilon);
        if (config.k_override <= 0 && k > config.k_max) {
            k = config.k_max;
            result.sample_count_clamped = true;
        }
        result.samples_per_estimate = k;
    }

    RandomizedCalendar current = z;
    result.calendar.plan.assign(inst.horizon, 0);
    for (int t = 0; t < inst.horizon; ++t) {
        std::vector<int> candidates;
        for (const auto& [index, p] : current.dist[t])
            if (p > config.zeta) candidates.push_back(index);
        if (candidates.empty()) candidates.push_back(0);

        DerandDecision decision;
        decision.period = t;
        int chosen = candidates.front();
        if (candidates.size() > 1) {
            double best = 0.0;
            bool first = true;
            for (int cand : candidates) {
                current.dist[t] = {{cand, 1.0}};
                double value = use_exact
                                   ? exact_expected_revenue(current, inst, config.mode,
                                                            eval_opt)
                                   : estimate_sampled(current, inst, config, t,
                                                      result.samples_per_estimate);
                decision.estimates.push_back({cand, value});
                if (first || value > best) {  // ties keep the canonical order
                    best = value;
                    chosen = cand;
                    first = false;
                }
            }
        }
        decision.chosen = chosen;
        result.decisions.push_back(std::move(decision));
        current.dist[t] = {{chosen, 1.0}};
        result.calendar.plan[t] = chosen;
    }
    return result;
}

std::string DerandResult::decision_log_json() const {
    std::ostringstream os;
    os.precision(17);
    for (const auto& d : decisions) {
        os << "{\"period\":" << d.period << ",\"candidates\":[";
        for (std::size_t k = 0; k < d.estimates.size(); ++k) {
            if (k) os << ',';
            os << "{\"assortment\":" << d.estimates[k].first
               << ",\"estimate\":" << d.estimates[k].second << '}';
        }
        os << "],\"chosen\":" << d.chosen << "}\n";
    }
    return os.str();
}

}  // namespace calrev
