#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "calrev/calendar.hpp"
#include "calrev/instance.hpp"

namespace calrev {

// A bundled instance with machine-readable expected values. Tests re-derive
// every expected value through the evaluation oracle.
struct Fixture {
    std::string name;
    std::string note;
    Instance instance;
    std::map<std::string, double> expected;
    std::optional<DeterministicCalendar> calendar;    // a pinned plan, when relevant
    std::optional<RandomizedCalendar> randomized;     // a pinned distribution
};

std::vector<std::string> fixture_names();
Fixture load_fixture(const std::string& name);

// Single-item Bernoulli pricing instance; q[t][j] is the purchase
// probability of ladder price j in period t (one row for stationary data).
Instance single_item_bernoulli(const std::string& name, int horizon, double inventory,
                               std::vector<double> prices,
                               std::vector<std::vector<double>> q, bool stationary);

// The synthetic three-item mixture-of-MNL family used in the experiment
// tables: inventories alpha * (3,5,4), T = 20, two prices per item.
enum class DemandSetting { Stationary, NonStationary };
enum class PriceDiff { Small, Big };
Instance synthetic_instance(DemandSetting setting, PriceDiff diff, double v0_low,
                            double v0_high, double alpha);

}  // namespace calrev
