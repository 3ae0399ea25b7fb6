#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "calrev/calendar.hpp"
#include "calrev/eval.hpp"
#include "calrev/instance.hpp"
#include "calrev/lp.hpp"

namespace calrev {

// Follow the LP solution directly: z_t(S) = x*_t(S) (CDLP-N) or the
// stationary row x*(S) replicated across periods (CDLP-S).
RandomizedCalendar lp_solution_policy(const LpSolution& sol, const Instance& inst);

// Stationary randomized policy: every period draws S with probability x*(S).
RandomizedCalendar stationary_randomized_policy(const LpSolution& sol,
                                                const Instance& inst);

// Non-stationary threshold policy: follow the CDLP-N solution but discard
// from each planned assortment every product priced at or below the item's
// bid price r*_i / (2 b_i); masses of assortments that collapse to the same
// survivor set are merged, and any mass shortfall goes to the empty set.
RandomizedCalendar nonstationary_threshold_policy(const LpSolution& sol,
                                                  const Instance& inst);

// Large-inventory policy: scale the CDLP-N solution by (1 - delta) and
// reserve the remaining delta = sqrt(3 ln(b_min) / b_min) for the empty
// assortment. Constructible for any instance; the guarantee needs b_min >= 6
// and a warning is recorded below that.
RandomizedCalendar large_inventory_policy(const LpSolution& sol, const Instance& inst,
                                          std::vector<std::string>* warnings = nullptr);

struct HighLowOptions {
    bool override_comparability_check = false;  // skip the CDF-ordering gate
    std::size_t state_cap = 100000;             // exact evaluation budget
    int fallback_reps = 100000;                 // paired simulation when too large
    uint64_t seed = 0;
};

// Single-item stationary calendar: solve DLP-S, read the two-price support,
// offer the higher price for s* periods then the lower one, where s* is the
// better of floor/ceil of T x*_H / (x*_H + x*_L) (ties to floor).
DeterministicCalendar high_low_calendar(const Instance& inst,
                                        const HighLowOptions& opt = {});

// Single-item non-stationary calendar: per period offer the price maximizing
// (p_j - r*/(2b)) q_tj against an explicit offer-nothing option worth 0.
// Ties prefer the higher price, and a price beats offer-nothing at equal value.
DeterministicCalendar bid_price_calendar(const Instance& inst);

// Highest immediate expected revenue each period, inventory ignored.
DeterministicCalendar myopic_policy(const Instance& inst);

}  // namespace calrev
