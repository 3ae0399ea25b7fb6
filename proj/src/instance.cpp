#include "calrev/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "calrev/common.hpp"

namespace calrev {

using nlohmann::json;

double Instance::min_inventory() const {
    return *std::min_element(inventories.begin(), inventories.end());
}

bool Instance::integral() const {
    if (!choice.integral_single_purchase()) return false;
    for (double b : inventories)
        if (std::fabs(b - std::round(b)) > 1e-12) return false;
    return true;
}

void Instance::validate() const {
    if (n_items < 1) throw ValidationError("instance needs at least one item");
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    if (static_cast<int>(inventories.size()) != n_items)
        throw ValidationError("one inventory level per item required");
    for (double b : inventories)
        if (!(b >= 1.0)) throw ValidationError("inventories must be >= 1");
    if (prices.empty()) throw ValidationError("price ladder is empty");
    for (std::size_t j = 0; j < prices.size(); ++j) {
        if (!(prices[j] >= 0.0) || !std::isfinite(prices[j]))
            throw ValidationError("prices must be finite and nonnegative");
        if (j > 0 && !(prices[j - 1] > prices[j]))
            throw ValidationError("prices must be strictly decreasing (duplicates illegal)");
    }
    for (const auto& s : family.assortments())
        for (const auto& p : s)
            if (p.item < 0 || p.item >= n_items || p.price < 0 || p.price >= n_prices())
                throw ValidationError("family references a product outside the instance");
    if (family.allows_multi_price_items() && !choice.integral_single_purchase())
        throw ValidationError("same-item multi-price assortments require a "
                              "single-purchase choice model");
    if (choice.integral_single_purchase()) {
        for (double b : inventories) {
            if (std::fabs(b - std::round(b)) > 1e-12)
                throw ValidationError("integral demand requires integer inventories");
            if (b > horizon + 1e-12)
                throw ValidationError("integral demand requires b_i <= T");
        }
    }
    if (stationary && !choice.stationary_data())
        throw ValidationError("stationary instance carries per-period choice data");
    choice.validate(n_items, n_prices(), family, horizon);
}

namespace {

DemandDistribution parse_distribution(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "bernoulli") return DemandDistribution::bernoulli(j.at("mean").get<double>());
    if (kind == "point") return DemandDistribution::point_mass(j.at("value").get<double>());
    if (kind == "finite") {
        std::vector<double> values, probs;
        for (const auto& atom : j.at("atoms")) {
            values.push_back(atom.at(0).get<double>());
            probs.push_back(atom.at(1).get<double>());
        }
        return DemandDistribution(std::move(values), std::move(probs));
    }
    if (kind == "binomial")
        return DemandDistribution::scaled_binomial(j.at("n").get<int>(),
                                                   j.at("beta").get<double>());
    if (kind == "trunc-exp")
        return DemandDistribution::truncated_exponential(
            j.at("lambda").get<double>(), j.value("grid", 64));
    throw ValidationError("unknown distribution kind '" + kind + "'");
}

Product parse_product(const json& j, const std::vector<int>& price_map) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError("a product is a [item, price_index] pair");
    Product p{j.at(0).get<int>(), j.at(1).get<int>()};
    if (p.price < 0 || p.price >= static_cast<int>(price_map.size()))
        throw ValidationError("product price index out of range");
    p.price = price_map[p.price];
    return p;
}

Assortment parse_assortment(const json& j, const std::vector<int>& price_map) {
    Assortment s;
    for (const auto& pj : j) s.push_back(parse_product(pj, price_map));
    return canonical(std::move(s));
}

std::vector<double> parse_scalar_or_array(const json& j) {
    if (j.is_array()) return j.get<std::vector<double>>();
    return {j.get<double>()};
}

ChoiceModel parse_choice(const json& j, const std::vector<int>& price_map) {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "table") {
        TableChoice m;
        const std::string joint = j.value("joint", "independent");
        if (joint == "single-purchase") m.single_purchase = true;
        else if (joint != "independent")
            throw ValidationError("table joint must be 'single-purchase' or 'independent'");
        // entries with "period": null apply to every period (stationary data)
        bool stationary_entries = false, per_period_entries = false;
        int max_period = -1;
        for (const auto& e : j.at("entries")) {
            if (e.at("period").is_null()) stationary_entries = true;
            else {
                per_period_entries = true;
                max_period = std::max(max_period, e.at("period").get<int>());
            }
        }
        if (stationary_entries && per_period_entries)
            throw ValidationError("table entries must be all stationary or all per-period");
        m.periods.resize(stationary_entries ? 1 : max_period + 1);
        for (const auto& e : j.at("entries")) {
            int t = stationary_entries ? 0 : e.at("period").get<int>();
            Assortment s = parse_assortment(e.at("assortment"), price_map);
            std::vector<DemandDistribution> dists;
            for (const auto& dj : e.at("demands")) dists.push_back(parse_distribution(dj));
            if (dists.size() != s.size())
                throw ValidationError("table entry needs one demand law per product");
            // demands listed in the written product order; realign to canonical
            Assortment raw;
            for (const auto& pj : e.at("assortment")) raw.push_back(parse_product(pj, price_map));
            std::vector<DemandDistribution> aligned(s.size());
            for (std::size_t k = 0; k < raw.size(); ++k) {
                auto it = std::lower_bound(s.begin(), s.end(), raw[k]);
                aligned[static_cast<std::size_t>(it - s.begin())] = dists[k];
            }
            m.periods[t][std::move(s)] = std::move(aligned);
        }
        return ChoiceModel(std::move(m));
    }
    if (variant == "mixture-mnl") {
        MixtureMnlChoice m;
        m.v_low = j.at("v_low").get<std::vector<double>>();
        m.v_high = j.at("v_high").get<std::vector<double>>();
        m.v0_low = j.at("v0_low").get<double>();
        m.v0_high = j.at("v0_high").get<double>();
        m.a_low = parse_scalar_or_array(j.at("a_low"));
        m.a_high = parse_scalar_or_array(j.at("a_high"));
        for (int raw : j.at("low_price").get<std::vector<int>>()) {
            if (raw < 0 || raw >= static_cast<int>(price_map.size()))
                throw ValidationError("mnl low_price index out of range");
            m.low_price.push_back(price_map[raw]);
        }
        for (int raw : j.at("high_price").get<std::vector<int>>()) {
            if (raw < 0 || raw >= static_cast<int>(price_map.size()))
                throw ValidationError("mnl high_price index out of range");
            m.high_price.push_back(price_map[raw]);
        }
        return ChoiceModel(std::move(m));
    }
    if (variant == "ranked-list") {
        RankedListChoice m;
        auto parse_row = [&](const json& rows) {
            std::vector<PreferenceOrdering> row;
            for (const auto& oj : rows) {
                PreferenceOrdering o;
                o.prob = oj.at("probability").get<double>();
                for (const auto& pj : oj.at("products"))
                    o.prefs.push_back(parse_product(pj, price_map));
                row.push_back(std::move(o));
            }
            return row;
        };
        if (j.contains("orderings")) m.periods.push_back(parse_row(j.at("orderings")));
        else
            for (const auto& rows : j.at("periods")) m.periods.push_back(parse_row(rows));
        return ChoiceModel(std::move(m));
    }
    throw ValidationError("unknown choice model variant '" + variant + "'");
}

AssortmentFamily parse_family(const json& j, int n_items, int n_prices,
                              const std::vector<int>& price_map) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "one-price-per-item")
        return enumerate_assortments(n_items, n_prices, AllSubsetsOnePrice{});
    if (kind == "capacity")
        return enumerate_assortments(n_items, n_prices,
                                     CapacityLimit{j.at("capacity").get<int>()});
    if (kind == "per-item-prices") {
        PerItemPrices spec;
        for (const auto& row : j.at("allowed")) {
            std::vector<int> allowed;
            for (int raw : row.get<std::vector<int>>()) {
                if (raw < 0 || raw >= static_cast<int>(price_map.size()))
                    throw ValidationError("allowed price index out of range");
                allowed.push_back(price_map[raw]);
            }
            spec.allowed.push_back(std::move(allowed));
        }
        return enumerate_assortments(n_items, n_prices, spec);
    }
    if (kind == "explicit") {
        ExplicitFamily spec;
        spec.allow_multi_price_items = j.value("allow_multi_price_items", false);
        for (const auto& sj : j.at("assortments"))
            spec.assortments.push_back(parse_assortment(sj, price_map));
        return enumerate_assortments(n_items, n_prices, spec);
    }
    throw ValidationError("unknown assortment_family kind '" + kind + "'");
}

}  // namespace

Instance build_instance(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("instance JSON parse error: ") + e.what());
    }
    try {
        Instance inst;
        inst.name = j.value("name", "instance");
        inst.n_items = j.at("items").get<int>();
        inst.horizon = j.at("horizon").get<int>();
        inst.inventories = j.at("inventories").get<std::vector<double>>();
        inst.stationary = j.at("stationary").get<bool>();
        auto raw_prices = j.at("prices").get<std::vector<double>>();

        // Sort the ladder to strictly decreasing order and remap every price
        // index in the configuration through the permutation.
        std::vector<int> order(raw_prices.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return raw_prices[a] > raw_prices[b]; });
        std::vector<int> price_map(raw_prices.size());
        inst.prices.resize(raw_prices.size());
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            price_map[order[pos]] = static_cast<int>(pos);
            inst.prices[pos] = raw_prices[order[pos]];
        }
        for (std::size_t k = 1; k < inst.prices.size(); ++k)
            if (inst.prices[k - 1] == inst.prices[k])
                throw ValidationError("duplicate prices in the ladder");

        inst.family = parse_family(j.at("assortment_family"), inst.n_items,
                                   inst.n_prices(), price_map);
        inst.choice = parse_choice(j.at("choice_model"), price_map);
        inst.validate();
        return inst;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("instance config error: ") + e.what());
    }
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open instance file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return build_instance(buf.str());
}

}  // namespace calrev
