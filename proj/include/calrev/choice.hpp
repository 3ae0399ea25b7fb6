#pragma once

#include <map>
#include <variant>
#include <vector>

#include "calrev/assortment.hpp"
#include "calrev/distribution.hpp"
#include "calrev/rng.hpp"

namespace calrev {

// One point of the joint demand law for a given (period, assortment):
// with probability `prob` the quantities demanded are exactly `quantity`
// (aligned with the assortment's canonical product order).
struct DemandAtom {
    double prob = 0.0;
    std::vector<double> quantity;
};

// Table model: an explicit per-(period, assortment, product) demand
// distribution. With `single_purchase` the per-product laws must be
// {0,1}-valued and the joint law buys at most one product per period;
// otherwise products draw independently (static substitution only).
struct TableChoice {
    bool single_purchase = false;
    // size 1 when the data is stationary, else one map per period
    std::vector<std::map<Assortment, std::vector<DemandDistribution>>> periods;
};

// Mixture of two MNL market-share models. Demand for a product is the MNL
// share of its class scaled by a Bernoulli class-activity coefficient, so
// joint demand per (period, assortment) has at most four atoms.
struct MixtureMnlChoice {
    std::vector<double> v_low, v_high;      // attraction weights per item
    double v0_low = 0.0, v0_high = 0.0;     // no-purchase weights
    std::vector<double> a_low, a_high;      // Bernoulli means, size 1 or T
    std::vector<int> low_price, high_price; // each item's ladder indices
};

// Distribution over strict preference orderings; a customer buys the first
// product of their ordering that is present in the (seen) assortment.
struct PreferenceOrdering {
    double prob = 0.0;
    std::vector<Product> prefs;
};
struct RankedListChoice {
    std::vector<std::vector<PreferenceOrdering>> periods;  // size 1 or T
};

class ChoiceModel {
public:
    ChoiceModel() = default;
    explicit ChoiceModel(TableChoice m) : impl_(std::move(m)) {}
    explicit ChoiceModel(MixtureMnlChoice m) : impl_(std::move(m)) {}
    explicit ChoiceModel(RankedListChoice m) : impl_(std::move(m)) {}

    // Marginal mean demand q_t(i,j,S) per product of S, in S's order.
    std::vector<double> mean_demand(int t, const Assortment& s) const;

    // Finite joint law for (t, S); atom probabilities sum to 1.
    std::vector<DemandAtom> atoms(int t, const Assortment& s) const;

    // One joint draw; consumes a fixed number of stream draws per call
    // given |S| (so replications stay aligned across code paths).
    std::vector<double> sample(int t, const Assortment& s, RngStream& rng) const;

    // True when every demand realization is a {0,1} single purchase; this is
    // what dynamic substitution and the DP oracle require.
    bool integral_single_purchase() const;

    // Ranked-list and MNL models satisfy substitutability by construction.
    bool substitutable_by_construction() const;

    bool stationary_data() const { return data_periods() == 1; }
    int data_periods() const;

    const TableChoice* as_table() const { return std::get_if<TableChoice>(&impl_); }
    const MixtureMnlChoice* as_mnl() const { return std::get_if<MixtureMnlChoice>(&impl_); }
    const RankedListChoice* as_ranked() const { return std::get_if<RankedListChoice>(&impl_); }

    // Structural checks against the instance dimensions; throws ValidationError.
    void validate(int n_items, int n_prices, const AssortmentFamily& family,
                  int horizon) const;

private:
    std::variant<TableChoice, MixtureMnlChoice, RankedListChoice> impl_;
};

}  // namespace calrev
