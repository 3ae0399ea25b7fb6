#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "calrev/calendar.hpp"
#include "calrev/eval.hpp"
#include "calrev/instance.hpp"

namespace calrev {

// Samples per estimate: ceil(T^2 (sum b)^2 p_max^2 / OPT^2 * eps^-2 *
// (ln n + ln T)), floored at 1. Requires opt_lp > 0 and epsilon > 0.
long long sample_count(const Instance& inst, double opt_lp, double epsilon);

struct DerandConfig {
    double epsilon = 0.1;
    uint64_t seed = 0;
    SubstitutionMode mode = SubstitutionMode::Static;
    double zeta = 1e-9;        // candidate support threshold
    long long k_override = 0;  // > 0 forces the sample count
    // The auto sample count is astronomically conservative at experiment
    // scale; it is clamped here (voiding the formal epsilon guarantee) and
    // the clamp is reported in the result.
    long long k_max = 10000;
    // Exact conditional evaluation replaces sampling whenever the state
    // space fits; it is strictly stronger and noise-free.
    bool prefer_exact = true;
    std::size_t state_cap = 100000;
    bool skip_model_checks = false;
};

struct DerandDecision {
    int period = 0;
    std::vector<std::pair<int, double>> estimates;  // (assortment index, value)
    int chosen = 0;
};

struct DerandResult {
    DeterministicCalendar calendar;
    bool used_exact = false;
    long long samples_per_estimate = 0;  // 0 on the exact path
    bool sample_count_clamped = false;
    std::vector<DerandDecision> decisions;

    std::string decision_log_json() const;  // one JSON object per line
};

// Fix the calendar period by period: condition on the prefix already fixed,
// evaluate every candidate assortment with positive mass, and keep the best
// (canonical-order tie-break). Periods with a single candidate are fixed
// without any evaluation.
DerandResult derandomize(const RandomizedCalendar& z, const Instance& inst,
                         double opt_lp, const DerandConfig& config = {});

}  // namespace calrev
