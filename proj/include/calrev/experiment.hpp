#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "calrev/calendar.hpp"
#include "calrev/derand.hpp"
#include "calrev/eval.hpp"
#include "calrev/fixtures.hpp"
#include "calrev/instance.hpp"

namespace calrev {

inline const std::vector<std::string> kPolicyNames = {
    "lp-ub",  "myopic", "lp-sol", "alg1",      "alg2",        "alg3",
    "alg5",   "alg6",   "derand-lp", "derand-alg2", "derand-alg3", "optimal-dp"};

struct PolicyOptions {
    uint64_t seed = 0;
    SubstitutionMode mode = SubstitutionMode::Static;
    double epsilon = 0.1;
    long long k_max = 10000;
    std::size_t state_cap = 100000;
};

struct PolicyOutcome {
    std::string policy;
    // Either a calendar to evaluate or an exact value (lp-ub, optimal-dp).
    std::optional<RandomizedCalendar> calendar;
    std::optional<double> exact_value;
    double opt_lp = 0.0;  // bound of the LP this policy was derived from
    std::vector<std::string> warnings;
};

// Construct the named policy for the instance; throws ValidationError for
// incompatible pairs (alg5/alg6 need one item, optimal-dp integral demand).
PolicyOutcome make_policy(const std::string& name, const Instance& inst,
                          const PolicyOptions& opt);

struct ExperimentSpec {
    // Instance source: a fixture name, an instance file, or the synthetic
    // family swept over (alpha, v0) cells.
    std::string fixture;
    std::string instance_path;
    bool synthetic = false;
    DemandSetting setting = DemandSetting::Stationary;
    PriceDiff price_diff = PriceDiff::Small;
    std::vector<double> alphas{1.0};
    std::vector<std::pair<double, double>> v0_pairs{{0.0, 0.0}};

    std::vector<std::string> policies;
    int replications = 10000;
    uint64_t seed = 0;
    SubstitutionMode mode = SubstitutionMode::Static;
    double epsilon = 0.1;
    long long k_max = 10000;
    int threads = 1;
    std::string out_path;
};

ExperimentSpec parse_experiment_spec(const std::string& json_text);

// Runs the (alpha, v0, policy) grid and returns the CSV table
//   instance,alpha,v0L,v0H,policy,mean,ci_half,lp_ub,pct_of_ub,reps,seed
// Rows appear in spec order regardless of thread count; incompatible
// policy/instance rows carry nan values and the run continues.
std::string run_experiment(const ExperimentSpec& spec);

// Calendar serialization: flat per-period assortment array plus metadata.
std::string calendar_to_json(const RandomizedCalendar& cal, const Instance& inst,
                             const std::string& policy, double opt_lp);
std::string calendar_to_json(const DeterministicCalendar& cal, const Instance& inst,
                             const std::string& policy, double opt_lp);
RandomizedCalendar calendar_from_json(const std::string& text, const Instance& inst);

std::string stats_to_json(const RevenueStats& stats);

}  // namespace calrev
