#include "calrev/assortment.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "calrev/common.hpp"

namespace calrev {

namespace {

std::string product_str(const Product& p) {
    return "(" + std::to_string(p.item) + "," + std::to_string(p.price) + ")";
}

bool has_item_twice(const Assortment& s) {
    for (std::size_t k = 1; k < s.size(); ++k)
        if (s[k].item == s[k - 1].item) return true;
    return false;
}

}  // namespace

Assortment canonical(Assortment products) {
    std::sort(products.begin(), products.end());
    products.erase(std::unique(products.begin(), products.end()), products.end());
    return products;
}

AssortmentFamily::AssortmentFamily(std::vector<Assortment> assortments,
                                   bool allow_multi_price_items)
    : allow_multi_price_items_(allow_multi_price_items) {
    std::set<Assortment> seen;
    for (auto& s : assortments) {
        auto c = canonical(std::move(s));
        if (!allow_multi_price_items_ && has_item_twice(c))
            throw ValidationError(
                "assortment offers the same item at two prices (item " +
                std::to_string([&] {
                    for (std::size_t k = 1; k < c.size(); ++k)
                        if (c[k].item == c[k - 1].item) return c[k].item;
                    return -1;
                }()) +
                ")");
        seen.insert(std::move(c));
    }
    seen.insert(Assortment{});  // the empty assortment is always a member
    assortments_.assign(seen.begin(), seen.end());
    for (std::size_t k = 0; k < assortments_.size(); ++k)
        index_[assortments_[k]] = static_cast<int>(k);
    if (!is_downward_closed())
        throw ValidationError("assortment family is not downward-closed");
}

int AssortmentFamily::index_of(const Assortment& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
}

bool AssortmentFamily::is_downward_closed() const {
    for (const auto& s : assortments_) {
        for (std::size_t k = 0; k < s.size(); ++k) {
            Assortment sub;
            sub.reserve(s.size() - 1);
            for (std::size_t j = 0; j < s.size(); ++j)
                if (j != k) sub.push_back(s[j]);
            if (index_.find(sub) == index_.end()) return false;
        }
    }
    return true;
}

namespace {

// All assignments of "absent or one allowed price" per item.
std::vector<Assortment> one_price_choices(const std::vector<std::vector<int>>& allowed,
                                          std::size_t cap) {
    std::vector<Assortment> out{Assortment{}};
    for (std::size_t i = 0; i < allowed.size(); ++i) {
        std::vector<Assortment> next;
        next.reserve(out.size() * (allowed[i].size() + 1));
        for (const auto& partial : out) {
            next.push_back(partial);
            for (int j : allowed[i]) {
                Assortment with = partial;
                with.push_back({static_cast<int>(i), j});
                next.push_back(std::move(with));
            }
            if (next.size() > cap)
                throw ValidationError("assortment family exceeds size cap");
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace

AssortmentFamily enumerate_assortments(int n_items, int n_prices,
                                       const ConstraintSpec& spec,
                                       std::size_t max_family_size) {
    if (n_items < 1 || n_prices < 1)
        throw ValidationError("enumerate_assortments: need items >= 1 and prices >= 1");

    if (const auto* all = std::get_if<AllSubsetsOnePrice>(&spec)) {
        (void)all;
        std::vector<std::vector<int>> allowed(n_items);
        for (auto& a : allowed)
            for (int j = 0; j < n_prices; ++j) a.push_back(j);
        return AssortmentFamily(one_price_choices(allowed, max_family_size));
    }
    if (const auto* per = std::get_if<PerItemPrices>(&spec)) {
        if (static_cast<int>(per->allowed.size()) != n_items)
            throw ValidationError("per-item price lists must cover every item");
        for (const auto& a : per->allowed)
            for (int j : a)
                if (j < 0 || j >= n_prices)
                    throw ValidationError("per-item price index out of range");
        return AssortmentFamily(one_price_choices(per->allowed, max_family_size));
    }
    if (const auto* cap = std::get_if<CapacityLimit>(&spec)) {
        if (cap->capacity < 0) throw ValidationError("capacity must be >= 0");
        auto all = one_price_choices(
            [&] {
                std::vector<std::vector<int>> allowed(n_items);
                for (auto& a : allowed)
                    for (int j = 0; j < n_prices; ++j) a.push_back(j);
                return allowed;
            }(),
            max_family_size * (n_prices + 1) + 1);
        std::vector<Assortment> kept;
        for (auto& s : all)
            if (s.size() <= static_cast<std::size_t>(cap->capacity))
                kept.push_back(std::move(s));
        if (kept.size() > max_family_size)
            throw ValidationError("assortment family exceeds size cap");
        return AssortmentFamily(std::move(kept));
    }
    const auto& expl = std::get<ExplicitFamily>(spec);
    for (const auto& s : expl.assortments) {
        for (const auto& p : s)
            if (p.item < 0 || p.item >= n_items || p.price < 0 || p.price >= n_prices)
                throw ValidationError("explicit assortment references unknown product " +
                                      product_str(p));
    }
    if (expl.assortments.size() > max_family_size)
        throw ValidationError("assortment family exceeds size cap");
    return AssortmentFamily(expl.assortments, expl.allow_multi_price_items);
}

}  // namespace calrev
