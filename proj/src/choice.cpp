#include "calrev/choice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "calrev/common.hpp"

namespace calrev {

namespace {

constexpr std::size_t kMaxJointAtoms = 1 << 20;

int effective_period(int t, int data_periods) {
    return data_periods == 1 ? 0 : t;
}

// --- table -----------------------------------------------------------------

const std::vector<DemandDistribution>& table_row(const TableChoice& m, int t,
                                                 const Assortment& s) {
    const auto& per = m.periods[effective_period(t, static_cast<int>(m.periods.size()))];
    auto it = per.find(s);
    if (it == per.end())
        throw ValidationError("table choice model has no entry for the requested assortment");
    return it->second;
}

std::vector<double> table_mean(const TableChoice& m, int t, const Assortment& s) {
    std::vector<double> q;
    if (s.empty()) return q;
    const auto& dists = table_row(m, t, s);
    q.reserve(dists.size());
    for (const auto& d : dists) q.push_back(d.mean());
    return q;
}

std::vector<DemandAtom> table_atoms(const TableChoice& m, int t, const Assortment& s) {
    if (s.empty()) return {DemandAtom{1.0, {}}};
    const auto& dists = table_row(m, t, s);
    std::size_t k = s.size();
    if (m.single_purchase) {
        std::vector<DemandAtom> out;
        double none = 1.0;
        for (std::size_t p = 0; p < k; ++p) {
            double q = dists[p].mean();
            if (q <= 0.0) continue;
            DemandAtom a{q, std::vector<double>(k, 0.0)};
            a.quantity[p] = 1.0;
            out.push_back(std::move(a));
            none -= q;
        }
        if (none > 1e-15 || out.empty())
            out.push_back(DemandAtom{std::max(none, 0.0), std::vector<double>(k, 0.0)});
        return out;
    }
    // independent products: cartesian product of supports
    std::size_t count = 1;
    for (const auto& d : dists) {
        count *= d.size();
        if (count > kMaxJointAtoms)
            throw NumericalError("joint demand support too large to enumerate");
    }
    std::vector<DemandAtom> out;
    out.reserve(count);
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        DemandAtom a{1.0, std::vector<double>(k)};
        for (std::size_t p = 0; p < k; ++p) {
            a.prob *= dists[p].probs()[idx[p]];
            a.quantity[p] = dists[p].values()[idx[p]];
        }
        if (a.prob > 0.0) out.push_back(std::move(a));
        std::size_t p = 0;
        while (p < k && ++idx[p] == dists[p].size()) idx[p++] = 0;
        if (p == k) break;
    }
    return out;
}

std::vector<double> table_sample(const TableChoice& m, int t, const Assortment& s,
                                 RngStream& rng) {
    std::vector<double> q(s.size(), 0.0);
    if (s.empty()) return q;
    const auto& dists = table_row(m, t, s);
    if (m.single_purchase) {
        double u = rng.next();
        double cum = 0.0;
        for (std::size_t p = 0; p < s.size(); ++p) {
            cum += dists[p].mean();
            if (u < cum) {
                q[p] = 1.0;
                break;
            }
        }
        return q;
    }
    for (std::size_t p = 0; p < s.size(); ++p) q[p] = dists[p].sample(rng.next());
    return q;
}

// --- mixture MNL -------------------------------------------------------------

// Class shares for each product of S; share is v_i over (v0 + sum of class
// weights present in S), with 0/0 taken as 0.
struct MnlShares {
    std::vector<double> low, high;  // per product of S; at most one is nonzero
};

MnlShares mnl_shares(const MixtureMnlChoice& m, const Assortment& s) {
    MnlShares sh;
    sh.low.assign(s.size(), 0.0);
    sh.high.assign(s.size(), 0.0);
    double denom_low = m.v0_low, denom_high = m.v0_high;
    for (const auto& p : s) {
        if (p.price == m.low_price[p.item]) denom_low += m.v_low[p.item];
        else if (p.price == m.high_price[p.item]) denom_high += m.v_high[p.item];
        else
            throw ValidationError("mnl choice model: product price is neither the "
                                  "item's low nor high price");
    }
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto& p = s[k];
        if (p.price == m.low_price[p.item]) {
            if (denom_low > 0.0) sh.low[k] = m.v_low[p.item] / denom_low;
        } else {
            if (denom_high > 0.0) sh.high[k] = m.v_high[p.item] / denom_high;
        }
    }
    return sh;
}

std::vector<double> mnl_mean(const MixtureMnlChoice& m, int t, const Assortment& s) {
    auto sh = mnl_shares(m, s);
    int tl = effective_period(t, static_cast<int>(m.a_low.size()));
    int th = effective_period(t, static_cast<int>(m.a_high.size()));
    std::vector<double> q(s.size());
    for (std::size_t k = 0; k < s.size(); ++k)
        q[k] = m.a_low[tl] * sh.low[k] + m.a_high[th] * sh.high[k];
    return q;
}

std::vector<DemandAtom> mnl_atoms(const MixtureMnlChoice& m, int t, const Assortment& s) {
    auto sh = mnl_shares(m, s);
    int tl = effective_period(t, static_cast<int>(m.a_low.size()));
    int th = effective_period(t, static_cast<int>(m.a_high.size()));
    double el = m.a_low[tl], eh = m.a_high[th];
    std::map<std::vector<double>, double> merged;
    for (int al = 0; al <= 1; ++al) {
        for (int ah = 0; ah <= 1; ++ah) {
            double pr = (al ? el : 1.0 - el) * (ah ? eh : 1.0 - eh);
            if (pr <= 0.0) continue;
            std::vector<double> qty(s.size());
            for (std::size_t k = 0; k < s.size(); ++k)
                qty[k] = al * sh.low[k] + ah * sh.high[k];
            merged[std::move(qty)] += pr;
        }
    }
    std::vector<DemandAtom> out;
    out.reserve(merged.size());
    for (auto& [qty, pr] : merged) out.push_back(DemandAtom{pr, qty});
    return out;
}

std::vector<double> mnl_sample(const MixtureMnlChoice& m, int t, const Assortment& s,
                               RngStream& rng) {
    int tl = effective_period(t, static_cast<int>(m.a_low.size()));
    int th = effective_period(t, static_cast<int>(m.a_high.size()));
    // Two draws per period regardless of S.
    bool al = rng.next() < m.a_low[tl];
    bool ah = rng.next() < m.a_high[th];
    auto sh = mnl_shares(m, s);
    std::vector<double> q(s.size(), 0.0);
    for (std::size_t k = 0; k < s.size(); ++k)
        q[k] = (al ? sh.low[k] : 0.0) + (ah ? sh.high[k] : 0.0);
    return q;
}

// --- ranked preference lists -------------------------------------------------

const std::vector<PreferenceOrdering>& ranked_row(const RankedListChoice& m, int t) {
    return m.periods[effective_period(t, static_cast<int>(m.periods.size()))];
}

// Index in S of the first preference present in it, or -1.
int first_choice(const PreferenceOrdering& o, const Assortment& s) {
    for (const auto& pref : o.prefs) {
        auto it = std::lower_bound(s.begin(), s.end(), pref);
        if (it != s.end() && *it == pref) return static_cast<int>(it - s.begin());
    }
    return -1;
}

std::vector<double> ranked_mean(const RankedListChoice& m, int t, const Assortment& s) {
    std::vector<double> q(s.size(), 0.0);
    for (const auto& o : ranked_row(m, t)) {
        int k = first_choice(o, s);
        if (k >= 0) q[k] += o.prob;
    }
    return q;
}

std::vector<DemandAtom> ranked_atoms(const RankedListChoice& m, int t, const Assortment& s) {
    auto q = ranked_mean(m, t, s);
    std::vector<DemandAtom> out;
    double none = 1.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (q[k] <= 0.0) continue;
        DemandAtom a{q[k], std::vector<double>(s.size(), 0.0)};
        a.quantity[k] = 1.0;
        out.push_back(std::move(a));
        none -= q[k];
    }
    if (none > 1e-15 || out.empty())
        out.push_back(DemandAtom{std::max(none, 0.0), std::vector<double>(s.size(), 0.0)});
    return out;
}

std::vector<double> ranked_sample(const RankedListChoice& m, int t, const Assortment& s,
                                  RngStream& rng) {
    const auto& row = ranked_row(m, t);
    double u = rng.next();
    std::vector<double> q(s.size(), 0.0);
    double cum = 0.0;
    for (const auto& o : row) {
        cum += o.prob;
        if (u < cum) {
            int k = first_choice(o, s);
            if (k >= 0) q[k] = 1.0;
            return q;
        }
    }
    return q;  // residual mass buys nothing
}

}  // namespace

std::vector<double> ChoiceModel::mean_demand(int t, const Assortment& s) const {
    return std::visit(
        [&](const auto& m) -> std::vector<double> {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, TableChoice>) return table_mean(m, t, s);
            else if constexpr (std::is_same_v<M, MixtureMnlChoice>) return mnl_mean(m, t, s);
            else return ranked_mean(m, t, s);
        },
        impl_);
}

std::vector<DemandAtom> ChoiceModel::atoms(int t, const Assortment& s) const {
    return std::visit(
        [&](const auto& m) -> std::vector<DemandAtom> {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, TableChoice>) return table_atoms(m, t, s);
            else if constexpr (std::is_same_v<M, MixtureMnlChoice>) return mnl_atoms(m, t, s);
            else return ranked_atoms(m, t, s);
        },
        impl_);
}

std::vector<double> ChoiceModel::sample(int t, const Assortment& s, RngStream& rng) const {
    return std::visit(
        [&](const auto& m) -> std::vector<double> {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, TableChoice>) return table_sample(m, t, s, rng);
            else if constexpr (std::is_same_v<M, MixtureMnlChoice>) return mnl_sample(m, t, s, rng);
            else return ranked_sample(m, t, s, rng);
        },
        impl_);
}

bool ChoiceModel::integral_single_purchase() const {
    if (const auto* t = as_table()) return t->single_purchase;
    return as_ranked() != nullptr;
}

bool ChoiceModel::substitutable_by_construction() const {
    return as_ranked() != nullptr || as_mnl() != nullptr;
}

int ChoiceModel::data_periods() const {
    return std::visit(
        [&](const auto& m) -> int {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, TableChoice>)
                return static_cast<int>(m.periods.size());
            else if constexpr (std::is_same_v<M, MixtureMnlChoice>)
                return static_cast<int>(std::max(m.a_low.size(), m.a_high.size()));
            else
                return static_cast<int>(m.periods.size());
        },
        impl_);
}

void ChoiceModel::validate(int n_items, int n_prices, const AssortmentFamily& family,
                           int horizon) const {
    int dp = data_periods();
    if (dp != 1 && dp != horizon)
        throw ValidationError("choice model data covers " + std::to_string(dp) +
                              " periods, expected 1 or " + std::to_string(horizon));
    if (const auto* tab = as_table()) {
        for (const auto& per : tab->periods) {
            for (const auto& s : family.assortments()) {
                if (s.empty()) continue;
                auto it = per.find(s);
                if (it == per.end())
                    throw ValidationError("table choice model missing an assortment "
                                          "present in the family");
                if (it->second.size() != s.size())
                    throw ValidationError("table entry length does not match assortment");
                double total = 0.0;
                for (const auto& d : it->second) {
                    if (tab->single_purchase && !d.is_zero_one())
                        throw ValidationError("single-purchase table requires {0,1} demand");
                    total += d.mean();
                }
                if (tab->single_purchase && total > 1.0 + 1e-12)
                    throw ValidationError("single-purchase choice probabilities sum to " +
                                          std::to_string(total) + " > 1");
            }
        }
    } else if (const auto* mnl = as_mnl()) {
        auto check_size = [&](std::size_t got, const char* what) {
            if (static_cast<int>(got) != n_items)
                throw ValidationError(std::string("mnl ") + what + " must have one entry per item");
        };
        check_size(mnl->v_low.size(), "v_low");
        check_size(mnl->v_high.size(), "v_high");
        check_size(mnl->low_price.size(), "low_price");
        check_size(mnl->high_price.size(), "high_price");
        for (int i = 0; i < n_items; ++i) {
            if (mnl->low_price[i] < 0 || mnl->low_price[i] >= n_prices ||
                mnl->high_price[i] < 0 || mnl->high_price[i] >= n_prices)
                throw ValidationError("mnl price index out of range");
            if (mnl->v_low[i] < 0.0 || mnl->v_high[i] < 0.0)
                throw ValidationError("mnl attraction weights must be nonnegative");
        }
        if (mnl->v0_low < 0.0 || mnl->v0_high < 0.0)
            throw ValidationError("mnl no-purchase weights must be nonnegative");
        for (double a : mnl->a_low)
            if (a < 0.0 || a > 1.0) throw ValidationError("mnl a_low outside [0,1]");
        for (double a : mnl->a_high)
            if (a < 0.0 || a > 1.0) throw ValidationError("mnl a_high outside [0,1]");
        if (mnl->a_low.empty() || mnl->a_high.empty())
            throw ValidationError("mnl class activity means are required");
    } else if (const auto* rl = as_ranked()) {
        for (const auto& row : rl->periods) {
            double total = 0.0;
            for (const auto& o : row) {
                if (o.prob < 0.0) throw ValidationError("ordering probability negative");
                total += o.prob;
                for (const auto& p : o.prefs)
                    if (p.item < 0 || p.item >= n_items || p.price < 0 || p.price >= n_prices)
                        throw ValidationError("preference ordering references unknown product");
            }
            if (total > 1.0 + 1e-12)
                throw ValidationError("ordering probabilities sum to " +
                                      std::to_string(total) + " > 1");
        }
    }
}

}  // namespace calrev
