#pragma once

#include <utility>
#include <vector>

#include "calrev/assortment.hpp"

namespace calrev {

// Per-period distribution over family assortment indices. Each period's
// probabilities sum to 1 within 1e-9 and entries are sorted by index.
struct RandomizedCalendar {
    std::vector<std::vector<std::pair<int, double>>> dist;

    int periods() const { return static_cast<int>(dist.size()); }
    void validate(const AssortmentFamily& family) const;

    // Probability of assortment `index` in period t.
    double prob(int t, int index) const;
};

// Fixed sequence of family assortment indices.
struct DeterministicCalendar {
    std::vector<int> plan;

    int periods() const { return static_cast<int>(plan.size()); }
    RandomizedCalendar as_randomized() const;
};

// Point-mass normalization helper: drops entries below zeta and rescales the
// remainder to sum exactly 1 (assigning everything to the empty assortment
// when nothing is left).
std::vector<std::pair<int, double>> clean_distribution(
    std::vector<std::pair<int, double>> entries, double zeta = 1e-9);

}  // namespace calrev
