#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "calrev/calendar.hpp"
#include "calrev/instance.hpp"
#include "calrev/rng.hpp"

namespace calrev {

enum class SubstitutionMode { Static, Dynamic };

SubstitutionMode parse_mode(const std::string& text);
std::string mode_name(SubstitutionMode mode);

// Dynamic substitution requires integral single-purchase demand, integer
// inventories, and a substitutable model; throws ValidationError otherwise.
// Table models are audited by the substitutability checker unless skipped.
void validate_mode(const Instance& inst, SubstitutionMode mode,
                   bool skip_model_checks = false);

struct RevenueStats {
    double mean = 0.0;
    double half_width = 0.0;  // 1.96 * stdev / sqrt(reps); diagnostic only
    int replications = 0;
    uint64_t seed = 0;
    SubstitutionMode mode = SubstitutionMode::Static;
};

struct SimOptions {
    int replications = 10000;
    uint64_t seed = 0;
    SubstitutionMode mode = SubstitutionMode::Static;
    int threads = 1;
    bool skip_model_checks = false;
    std::string trace_csv_path;  // per-replication trace dump when non-empty
};

// Mean revenue of the calendar over independent replications. Replication r
// draws from the counter-based stream keyed (seed, r), so results are
// bit-identical for a fixed (seed, replications) on any thread count.
RevenueStats simulate(const RandomizedCalendar& cal, const Instance& inst,
                      const SimOptions& opt);
RevenueStats simulate(const DeterministicCalendar& cal, const Instance& inst,
                      const SimOptions& opt);

// One replication's revenue; the stream must be freshly keyed for it.
double simulate_one(const RandomizedCalendar& cal, const Instance& inst,
                    SubstitutionMode mode, RngStream& rng);

struct EvalOptions {
    std::size_t state_cap = 100000;
    bool skip_model_checks = false;
};

// Exact expected revenue by propagating the probability distribution over
// inventory vectors period by period, mixing over the calendar and the
// demand atoms. This is the oracle behind every derived value; throws
// NumericalError when the reachable state space exceeds the cap.
double exact_expected_revenue(const RandomizedCalendar& cal, const Instance& inst,
                              SubstitutionMode mode, const EvalOptions& opt = {});
double exact_expected_revenue(const DeterministicCalendar& cal, const Instance& inst,
                              SubstitutionMode mode, const EvalOptions& opt = {});

// Optimal dynamic program over integer inventory vectors.
struct DpValue {
    double root_value = 0.0;
    std::vector<int> radix;                  // b_i + 1 per item
    std::vector<std::vector<double>> values;  // [t][state], values[T] is zero
    std::vector<std::vector<int>> actions;    // [t][state], family index

    int state_index(const std::vector<int>& inventory) const;
};
DpValue optimal_dp(const Instance& inst, SubstitutionMode mode,
                   const EvalOptions& opt = {});

// Lemma-style sanity check against the LP optimum: exact values must sit
// below opt_lp + 1e-9, simulated means below opt_lp + 4 half-widths.
bool upper_bound_check(double exact_value, double opt_lp);
bool upper_bound_check(const RevenueStats& stats, double opt_lp);

}  // namespace calrev
