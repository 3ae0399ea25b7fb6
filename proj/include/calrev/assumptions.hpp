#pragma once

#include <vector>

#include "calrev/choice.hpp"
#include "calrev/distribution.hpp"
#include "calrev/instance.hpp"

namespace calrev {

// Substitutability: q_t(i,j,S') >= q_t(i,j,S) whenever S' is a sub-assortment
// of S and (i,j) survives. An empty report means the property holds for
// period t over every family pair.
struct SubstitutabilityViolation {
    int t = 0;
    int superset = 0;  // family index of S
    int subset = 0;    // family index of S'
    Product product;
    double q_sub = 0.0, q_sup = 0.0;
};
std::vector<SubstitutabilityViolation> check_substitutability(
    const ChoiceModel& model, const AssortmentFamily& family, int t);

// Pointwise CDF comparison over the merged support.
enum class CdfOrdering { Equal, FirstDominates, SecondDominates, Incomparable };
CdfOrdering check_cdf_dominance(const DemandDistribution& d1,
                                const DemandDistribution& d2);

// Truncation-ratio comparison: passes iff for every c in the grid
//   E[min(c, Q_hi)]/E[Q_hi] >= E[min(c, Q_lo)]/E[Q_lo].
// Throws ValidationError when either mean is zero (ratio undefined).
struct TruncationRatioResult {
    bool pass = true;
    double worst_c = 0.0;
    double worst_gap = 0.0;  // most negative (hi - lo) ratio difference
};
TruncationRatioResult check_truncation_ratio(const DemandDistribution& d_high,
                                             const DemandDistribution& d_low,
                                             const std::vector<double>& c_grid);

// Support points of both laws plus the uniform grid {k/100}.
std::vector<double> default_c_grid(const DemandDistribution& a,
                                   const DemandDistribution& b);

// Exact marginal law of the k-th product of S under (t, S), collapsed from
// the joint atoms.
DemandDistribution marginal_distribution(const ChoiceModel& model, int t,
                                         const Assortment& s, std::size_t k);

// Instance-level audit of all three demand assumptions.
struct AssumptionReport {
    bool substitutability_checked = false;
    std::vector<SubstitutabilityViolation> substitutability;

    struct TruncationViolation {
        int t = 0;
        int item = 0;
        Product high, low;
        int high_set = 0, low_set = 0;  // family indices
        double worst_c = 0.0, worst_gap = 0.0;
    };
    bool truncation_checked = false;
    std::vector<TruncationViolation> truncation;

    struct ComparabilityViolation {
        int t = 0;
        int price_a = 0, price_b = 0;
    };
    bool comparability_checked = false;  // single-item instances only
    std::vector<ComparabilityViolation> comparability;

    bool all_pass() const {
        return substitutability.empty() && truncation.empty() && comparability.empty();
    }
};
AssumptionReport check_assumptions(const Instance& instance,
                                   std::size_t pair_cap = 4000000);

}  // namespace calrev
