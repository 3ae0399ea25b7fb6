#include "calrev/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "calrev/common.hpp"

namespace calrev {

namespace {

constexpr double kCompareTol = 1e-12;

bool is_subset(const Assortment& sub, const Assortment& sup) {
    std::size_t i = 0;
    for (const auto& p : sub) {
        while (i < sup.size() && sup[i] < p) ++i;
        if (i == sup.size() || !(sup[i] == p)) return false;
        ++i;
    }
    return true;
}

}  // namespace

std::vector<SubstitutabilityViolation> check_substitutability(
    const ChoiceModel& model, const AssortmentFamily& family, int t) {
    std::vector<SubstitutabilityViolation> out;
    const auto& sets = family.assortments();
    std::vector<std::vector<double>> means(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) means[s] = model.mean_demand(t, sets[s]);
    for (std::size_t sup = 0; sup < sets.size(); ++sup) {
        for (std::size_t sub = 0; sub < sets.size(); ++sub) {
            if (sub == sup || sets[sub].size() > sets[sup].size()) continue;
            if (!is_subset(sets[sub], sets[sup])) continue;
            for (std::size_t k = 0; k < sets[sub].size(); ++k) {
                const auto& p = sets[sub][k];
                auto it = std::lower_bound(sets[sup].begin(), sets[sup].end(), p);
                double q_sup = means[sup][static_cast<std::size_t>(it - sets[sup].begin())];
                double q_sub = means[sub][k];
                if (q_sub < q_sup - kCompareTol)
                    out.push_back({t, static_cast<int>(sup), static_cast<int>(sub), p,
                                   q_sub, q_sup});
            }
        }
    }
    return out;
}

CdfOrdering check_cdf_dominance(const DemandDistribution& d1,
                                const DemandDistribution& d2) {
    std::set<double> support(d1.values().begin(), d1.values().end());
    support.insert(d2.values().begin(), d2.values().end());
    bool first_above = false, second_above = false;
    for (double x : support) {
        double f1 = d1.cdf(x), f2 = d2.cdf(x);
        if (f1 > f2 + kCompareTol) first_above = true;
        if (f2 > f1 + kCompareTol) second_above = true;
    }
    if (first_above && second_above) return CdfOrdering::Incomparable;
    if (first_above) return CdfOrdering::FirstDominates;
    if (second_above) return CdfOrdering::SecondDominates;
    return CdfOrdering::Equal;
}

std::vector<double> default_c_grid(const DemandDistribution& a,
                                   const DemandDistribution& b) {
    std::set<double> grid(a.values().begin(), a.values().end());
    grid.insert(b.values().begin(), b.values().end());
    for (int k = 0; k <= 100; ++k) grid.insert(k / 100.0);
    return {grid.begin(), grid.end()};
}

TruncationRatioResult check_truncation_ratio(const DemandDistribution& d_high,
                                             const DemandDistribution& d_low,
                                             const std::vector<double>& c_grid) {
    double mean_hi = d_high.mean();
    double mean_lo = d_low.mean();
    if (mean_hi <= 0.0 || mean_lo <= 0.0)
        throw ValidationError("truncation ratio undefined: zero-mean demand distribution");
    TruncationRatioResult res;
    for (double c : c_grid) {
        double gap = d_high.truncated_mean(c) / mean_hi - d_low.truncated_mean(c) / mean_lo;
        if (gap < res.worst_gap) {
            res.worst_gap = gap;
            res.worst_c = c;
        }
    }
    res.pass = res.worst_gap >= -kCompareTol;
    return res;
}

DemandDistribution marginal_distribution(const ChoiceModel& model, int t,
                                         const Assortment& s, std::size_t k) {
    std::map<double, double> mass;
    for (const auto& atom : model.atoms(t, s)) mass[atom.quantity.at(k)] += atom.prob;
    std::vector<double> values, probs;
    for (const auto& [v, p] : mass) {
        values.push_back(v);
        probs.push_back(p);
    }
    return DemandDistribution(std::move(values), std::move(probs));
}

AssumptionReport check_assumptions(const Instance& inst, std::size_t pair_cap) {
    AssumptionReport report;
    const auto& sets = inst.family.assortments();
    int data_periods = inst.choice.data_periods();

    std::size_t pair_count = sets.size() * sets.size() * data_periods;
    if (pair_count <= pair_cap) {
        report.substitutability_checked = true;
        for (int t = 0; t < data_periods; ++t) {
            auto v = check_substitutability(inst.choice, inst.family, t);
            report.substitutability.insert(report.substitutability.end(), v.begin(),
                                           v.end());
        }
    }

    // Literal quantifier: one item, all assortment pairs carrying it, all
    // price pairs with p_j > p_j'.
    struct Occurrence { Product p; int set; std::size_t pos; };
    std::vector<std::vector<Occurrence>> per_item(inst.n_items);
    for (std::size_t s = 0; s < sets.size(); ++s)
        for (std::size_t k = 0; k < sets[s].size(); ++k)
            per_item[sets[s][k].item].push_back({sets[s][k], static_cast<int>(s), k});
    std::size_t trunc_pairs = 0;
    for (const auto& occ : per_item) trunc_pairs += occ.size() * occ.size();
    if (trunc_pairs * data_periods <= pair_cap) {
        report.truncation_checked = true;
        for (int t = 0; t < data_periods; ++t) {
            for (int i = 0; i < inst.n_items; ++i) {
                for (const auto& hi : per_item[i]) {
                    for (const auto& lo : per_item[i]) {
                        if (!(inst.prices[hi.p.price] > inst.prices[lo.p.price])) continue;
                        auto d_hi = marginal_distribution(inst.choice, t, sets[hi.set], hi.pos);
                        auto d_lo = marginal_distribution(inst.choice, t, sets[lo.set], lo.pos);
                        if (d_hi.mean() <= 0.0 || d_lo.mean() <= 0.0) continue;
                        auto res = check_truncation_ratio(d_hi, d_lo,
                                                          default_c_grid(d_hi, d_lo));
                        if (!res.pass)
                            report.truncation.push_back({t, i, hi.p, lo.p, hi.set, lo.set,
                                                         res.worst_c, res.worst_gap});
                    }
                }
            }
        }
    }

    if (inst.n_items == 1) {
        report.comparability_checked = true;
        for (int t = 0; t < data_periods; ++t) {
            for (int j1 = 0; j1 < inst.n_prices(); ++j1) {
                Assortment s1{{0, j1}};
                if (!inst.family.contains(s1)) continue;
                for (int j2 = j1 + 1; j2 < inst.n_prices(); ++j2) {
                    Assortment s2{{0, j2}};
                    if (!inst.family.contains(s2)) continue;
                    auto d1 = marginal_distribution(inst.choice, t, s1, 0);
                    auto d2 = marginal_distribution(inst.choice, t, s2, 0);
                    if (check_cdf_dominance(d1, d2) == CdfOrdering::Incomparable)
                        report.comparability.push_back({t, j1, j2});
                }
            }
        }
    }
    return report;
}

}  // namespace calrev
