#pragma once

#include <string>
#include <vector>

#include "calrev/assortment.hpp"
#include "calrev/choice.hpp"

namespace calrev {

// A complete problem: items with starting inventory, a price ladder, a
// horizon, the feasible assortment family, and the per-period demand law.
struct Instance {
    std::string name = "instance";
    int n_items = 0;
    std::vector<double> inventories;  // b_i >= 1
    std::vector<double> prices;       // strictly decreasing, p[0] the highest
    int horizon = 0;
    AssortmentFamily family;
    ChoiceModel choice;
    bool stationary = false;

    int n_prices() const { return static_cast<int>(prices.size()); }
    double min_inventory() const;
    double max_price() const { return prices.empty() ? 0.0 : prices.front(); }

    // Integral single-purchase demand with integer inventories; required for
    // dynamic substitution and the DP oracle.
    bool integral() const;

    // Enforces every type invariant; throws ValidationError.
    void validate() const;
};

// Build and validate an instance from the JSON configuration described in
// docs/instance_schema.md. Prices are re-sorted to strictly decreasing order
// if needed, remapping every price index in the config.
Instance build_instance(const std::string& json_text);
Instance load_instance_file(const std::string& path);

}  // namespace calrev
