#include "calrev/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "calrev/common.hpp"

namespace calrev {

Instance single_item_bernoulli(const std::string& name, int horizon, double inventory,
                               std::vector<double> prices,
                               std::vector<std::vector<double>> q, bool stationary) {
    Instance inst;
    inst.name = name;
    inst.n_items = 1;
    inst.horizon = horizon;
    inst.inventories = {inventory};
    inst.prices = std::move(prices);
    inst.stationary = stationary;
    inst.family = enumerate_assortments(1, static_cast<int>(inst.prices.size()),
                                        AllSubsetsOnePrice{});
    TableChoice table;
    table.single_purchase = true;
    table.periods.resize(q.size());
    for (std::size_t t = 0; t < q.size(); ++t) {
        if (q[t].size() != inst.prices.size())
            throw ValidationError("single_item_bernoulli: one q per price required");
        for (std::size_t j = 0; j < q[t].size(); ++j)
            table.periods[t][{{0, static_cast<int>(j)}}] = {
                DemandDistribution::bernoulli(q[t][j])};
    }
    inst.choice = ChoiceModel(std::move(table));
    inst.validate();
    return inst;
}

Instance synthetic_instance(DemandSetting setting, PriceDiff diff, double v0_low,
                            double v0_high, double alpha) {
    const std::vector<double> high =
        diff == PriceDiff::Small ? std::vector<double>{800.0, 1000.0, 600.0}
                                 : std::vector<double>{8000.0, 10000.0, 6000.0};
    const std::vector<double> low{400.0, 500.0, 300.0};

    Instance inst;
    inst.name = std::string("synthetic-") +
                (setting == DemandSetting::Stationary ? "stationary" : "nonstationary") +
                (diff == PriceDiff::Small ? "-small" : "-big");
    inst.n_items = 3;
    inst.horizon = 20;
    inst.inventories = {alpha * 3.0, alpha * 5.0, alpha * 4.0};
    inst.stationary = setting == DemandSetting::Stationary;

    std::vector<double> ladder;
    for (double p : high) ladder.push_back(p);
    for (double p : low) ladder.push_back(p);
    std::sort(ladder.begin(), ladder.end(), std::greater<>());
    inst.prices = ladder;
    auto index_of_price = [&](double p) {
        for (std::size_t j = 0; j < ladder.size(); ++j)
            if (ladder[j] == p) return static_cast<int>(j);
        throw ValidationError("price missing from ladder");
    };

    MixtureMnlChoice mnl;
    mnl.v_low = {5.0, 1.0, 10.0};
    mnl.v_high = {5.0, 10.0, 1.0};
    mnl.v0_low = v0_low;
    mnl.v0_high = v0_high;
    PerItemPrices allowed;
    for (int i = 0; i < 3; ++i) {
        mnl.high_price.push_back(index_of_price(high[i]));
        mnl.low_price.push_back(index_of_price(low[i]));
        allowed.allowed.push_back({mnl.high_price[i], mnl.low_price[i]});
    }
    if (setting == DemandSetting::Stationary) {
        mnl.a_low = {0.3};
        mnl.a_high = {0.2};
    } else {
        mnl.a_low.assign(20, 0.2);
        mnl.a_high.assign(20, 0.2);
        for (int t = 0; t < 12; ++t) {
            mnl.a_low[t] = 0.8;
            mnl.a_high[t] = 0.0;
        }
    }
    inst.family = enumerate_assortments(3, static_cast<int>(ladder.size()), allowed);
    inst.choice = ChoiceModel(std::move(mnl));
    inst.validate();
    return inst;
}

namespace {

Fixture fixture_lp_as_calendar() {
    // Two periods, one unit, huge price gap; following the LP plan directly
    // sells out on day one at the low price.
    const double eps = 0.1;
    Fixture f;
    f.name = "example-lp-as-calendar";
    f.note = "two-period gap instance where the raw LP plan forfeits the "
             "high-price sale";
    f.instance = single_item_bernoulli(f.name, 2, 1.0, {1.0 / (eps * eps), 1.0},
                                       {{0.0, 1.0 - eps}, {eps, eps}}, false);
    f.expected = {{"opt_lp", 10.9},
                  {"lp_calendar", 1.9},
                  {"alg2", 10.0},
                  {"alg6", 10.0},
                  {"half_opt", 5.45}};
    f.calendar = DeterministicCalendar{{2, 1}};  // low price, then high price
    return f;
}

Fixture fixture_high_to_low() {
    Fixture f;
    f.name = "example-high-to-low";
    f.note = "two prices, one unit; the high-to-low order wins";
    f.instance = single_item_bernoulli(f.name, 2, 1.0, {8.0, 1.0}, {{0.1, 0.9}}, true);
    f.expected = {{"opt_lp", 1.7}, {"high_low", 1.61}, {"low_high", 0.98}};
    f.calendar = DeterministicCalendar{{1, 2}};  // high then low
    return f;
}

Fixture fixture_two_price() {
    Fixture f;
    f.name = "example-two-price";
    f.note = "three periods, two units; the LP splits time evenly between "
             "the two prices";
    f.instance = single_item_bernoulli(f.name, 3, 2.0, {2.0, 1.0},
                                       {{1.0 / 3.0, 1.0}}, true);
    f.expected = {{"opt_lp", 2.5},
                  {"high_low_low", 7.0 / 3.0},
                  {"high_high_low", 20.0 / 9.0},
                  {"myopic", 2.0}};
    f.calendar = DeterministicCalendar{{1, 2, 2}};
    RandomizedCalendar z;
    z.dist.assign(3, {{1, 0.5}, {2, 0.5}});
    f.randomized = z;
    return f;
}

Fixture fixture_prop1() {
    // Two items sharing one shelf story: item 0 carries the valuable product
    // and a free substitute; item 1 carries the decoy that shields it until
    // the decoy stocks out.
    Fixture f;
    f.name = "prop1-dynamic-sub";
    f.note = "ranked-list instance whose dynamic-substitution value drops "
             "below the stationary guarantee";
    Instance inst;
    inst.name = f.name;
    inst.n_items = 2;
    inst.horizon = 5;
    inst.inventories = {1.0, 1.0};
    inst.prices = {1.0, 0.0};
    inst.stationary = true;
    const Product A{0, 0}, B{0, 1}, C{1, 1};
    ExplicitFamily family;
    family.allow_multi_price_items = true;
    family.assortments = {{},     {A},    {B},    {C},
                          {A, B}, {A, C}, {B, C}, {A, B, C}};
    inst.family = enumerate_assortments(2, 2, family);
    RankedListChoice ranked;
    ranked.periods = {{{0.2, {C, B}}, {0.2, {A}}}};
    inst.choice = ChoiceModel(std::move(ranked));
    inst.validate();
    f.instance = std::move(inst);
    f.expected = {{"opt_lp", 1.0}, {"dynamic_value", 1959.0 / 3125.0}};
    DeterministicCalendar cal;
    cal.plan.assign(5, f.instance.family.index_of({A, B, C}));
    f.calendar = cal;
    return f;
}

Fixture fixture_prop3(int horizon, double inventory) {
    Fixture f;
    f.name = "prop3-tight";
    f.note = "single price with q = b/T; the unique calendar meets the "
             "binomial bound exactly";
    f.instance = single_item_bernoulli(f.name, horizon, inventory, {1.0},
                                       {{inventory / horizon}}, true);
    f.expected = {{"opt_lp", inventory}};
    if (horizon == 4 && inventory == 2.0) f.expected["exact"] = 13.0 / 8.0;
    DeterministicCalendar cal;
    cal.plan.assign(horizon, f.instance.family.index_of({{0, 0}}));
    f.calendar = cal;
    return f;
}

Fixture fixture_prop4() {
    const double eps = 0.01;
    Fixture f;
    f.name = "prop4-tight";
    f.note = "two-period instance where every calendar earns 1 against an LP "
             "bound of 2 - eps";
    f.instance = single_item_bernoulli(f.name, 2, 1.0, {1.0 / eps, 1.0},
                                       {{0.0, 1.0 - eps}, {eps, eps}}, false);
    f.expected = {{"opt_lp", 2.0 - eps}, {"best_policy", 1.0}};
    return f;
}

Fixture fixture_prop6() {
    const int horizon = 50;
    Fixture f;
    f.name = "prop6-single-price";
    f.note = "instance where no single price reaches the binomial bound";
    f.instance = single_item_bernoulli(f.name, horizon, 1.0, {3.0, 1.0},
                                       {{1.0 / (2.0 * horizon), 1.0}}, true);
    f.expected = {{"opt_lp", (4.0 * horizon - 3.0) / (2.0 * horizon - 1.0)},
                  {"high_only", 3.0 * (1.0 - std::pow(1.0 - 0.01, horizon))},
                  {"low_only", 1.0}};
    return f;
}

Fixture fixture_derand_three_period() {
    Fixture f;
    f.name = "derand-three-period";
    f.note = "three-period mixed plan used to exercise the per-period "
             "candidate sets of the de-randomizer";
    Instance inst;
    inst.name = f.name;
    inst.n_items = 2;
    inst.horizon = 3;
    inst.inventories = {1.0, 1.0};
    inst.prices = {2.0, 1.0};
    inst.stationary = true;
    PerItemPrices allowed;
    allowed.allowed = {{0}, {1}};  // item 0 at the high price, item 1 at the low
    inst.family = enumerate_assortments(2, 2, allowed);
    TableChoice table;
    table.single_purchase = true;
    table.periods.resize(1);
    const Product a{0, 0}, b{1, 1};
    table.periods[0][{a}] = {DemandDistribution::bernoulli(0.6)};
    table.periods[0][{b}] = {DemandDistribution::bernoulli(0.5)};
    table.periods[0][{a, b}] = {DemandDistribution::bernoulli(0.4),
                                DemandDistribution::bernoulli(0.4)};
    inst.choice = ChoiceModel(std::move(table));
    inst.validate();
    int ia = inst.family.index_of({a});
    int ib = inst.family.index_of({b});
    RandomizedCalendar z;
    z.dist = {{{std::min(ia, ib), 0.5}, {std::max(ia, ib), 0.5}},
              {{0, 0.5}, {ia, 0.5}},
              {{ib, 1.0}}};
    f.randomized = z;
    f.instance = std::move(inst);
    return f;
}

Fixture fixture_synthetic() {
    Fixture f;
    f.name = "synthetic-stationary";
    f.note = "three-item mixture-of-MNL family, stationary, small price gap, "
             "no-purchase weights (0,0), load factor 1.0";
    f.instance = synthetic_instance(DemandSetting::Stationary, PriceDiff::Small,
                                    0.0, 0.0, 1.0);
    f.expected = {{"opt_lp", 6050.0}};
    return f;
}

Fixture fixture_synthetic_nonstat() {
    Fixture f;
    f.name = "synthetic-nonstationary-big";
    f.note = "three-item mixture-of-MNL family, non-stationary, large price "
             "gap, no-purchase weights (0,0), load factor 0.6";
    f.instance = synthetic_instance(DemandSetting::NonStationary, PriceDiff::Big,
                                    0.0, 0.0, 0.6);
    f.expected = {{"opt_lp", 48034.0}};
    return f;
}

}  // namespace

std::vector<std::string> fixture_names() {
    return {"example-lp-as-calendar", "example-high-to-low", "example-two-price",
            "prop1-dynamic-sub",      "prop3-tight",         "prop4-tight",
            "prop6-single-price",     "derand-three-period", "synthetic-stationary",
            "synthetic-nonstationary-big"};
}

Fixture load_fixture(const std::string& name) {
    if (name == "example-lp-as-calendar") return fixture_lp_as_calendar();
    if (name == "example-high-to-low") return fixture_high_to_low();
    if (name == "example-two-price") return fixture_two_price();
    if (name == "prop1-dynamic-sub") return fixture_prop1();
    if (name == "prop3-tight") return fixture_prop3(4, 2.0);
    if (name == "prop4-tight") return fixture_prop4();
    if (name == "prop6-single-price") return fixture_prop6();
    if (name == "derand-three-period") return fixture_derand_three_period();
    if (name == "synthetic-stationary") return fixture_synthetic();
    if (name == "synthetic-nonstationary-big") return fixture_synthetic_nonstat();
    throw ValidationError("unknown fixture '" + name + "'");
}

}  // namespace calrev
