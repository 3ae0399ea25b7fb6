#pragma once

#include <cstddef>
#include <map>
#include <variant>
#include <vector>

namespace calrev {

// An item offered at a price from the ladder. Indices are 0-based.
struct Product {
    int item = 0;
    int price = 0;  // index into Instance::prices (sorted high to low)

    friend bool operator==(const Product& a, const Product& b) {
        return a.item == b.item && a.price == b.price;
    }
    friend bool operator<(const Product& a, const Product& b) {
        return a.item != b.item ? a.item < b.item : a.price < b.price;
    }
};

// Sorted product list; the empty vector is the empty assortment.
using Assortment = std::vector<Product>;

Assortment canonical(Assortment products);

// Constraint languages accepted by enumerate_assortments.
struct AllSubsetsOnePrice {};  // every item absent or at any one ladder price
struct CapacityLimit { int capacity = 1; };  // at most k products, one price per item
struct PerItemPrices { std::vector<std::vector<int>> allowed; };  // allowed price indices per item
struct ExplicitFamily {
    std::vector<Assortment> assortments;
    // Same-item-two-price members are only legal for single-purchase choice
    // models; build_instance enforces that coupling.
    bool allow_multi_price_items = false;
};
using ConstraintSpec =
    std::variant<AllSubsetsOnePrice, CapacityLimit, PerItemPrices, ExplicitFamily>;

// Downward-closed family of assortments in canonical order (lexicographic by
// sorted product list), with the empty assortment at index 0.
class AssortmentFamily {
public:
    AssortmentFamily() = default;
    explicit AssortmentFamily(std::vector<Assortment> assortments,
                              bool allow_multi_price_items = false);

    const std::vector<Assortment>& assortments() const { return assortments_; }
    const Assortment& at(int index) const { return assortments_[index]; }
    std::size_t size() const { return assortments_.size(); }

    // -1 when the assortment is not a member.
    int index_of(const Assortment& s) const;
    bool contains(const Assortment& s) const { return index_of(s) >= 0; }

    bool allows_multi_price_items() const { return allow_multi_price_items_; }

    // Brute-force downward-closure check (one-element deletions suffice).
    bool is_downward_closed() const;

private:
    std::vector<Assortment> assortments_;
    std::map<Assortment, int> index_;
    bool allow_multi_price_items_ = false;
};

AssortmentFamily enumerate_assortments(int n_items, int n_prices,
                                       const ConstraintSpec& spec,
                                       std::size_t max_family_size = 100000);

}  // namespace calrev
