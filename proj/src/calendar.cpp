#include "calrev/calendar.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "calrev/common.hpp"

namespace calrev {

void RandomizedCalendar::validate(const AssortmentFamily& family) const {
    for (const auto& period : dist) {
        double total = 0.0;
        int prev = -1;
        for (const auto& [index, p] : period) {
            if (index <= prev) throw ValidationError("calendar entries out of order");
            if (index < 0 || index >= static_cast<int>(family.size()))
                throw ValidationError("calendar references an assortment outside the family");
            if (p < -1e-12) throw ValidationError("negative calendar probability");
            prev = index;
            total += p;
        }
        if (std::fabs(total - 1.0) > 1e-9)
            throw ValidationError("calendar period probabilities sum to " +
                                  std::to_string(total));
    }
}

double RandomizedCalendar::prob(int t, int index) const {
    for (const auto& [k, p] : dist[t])
        if (k == index) return p;
    return 0.0;
}

RandomizedCalendar DeterministicCalendar::as_randomized() const {
    RandomizedCalendar z;
    z.dist.reserve(plan.size());
    for (int s : plan) z.dist.push_back({{s, 1.0}});
    return z;
}

std::vector<std::pair<int, double>> clean_distribution(
    std::vector<std::pair<int, double>> entries, double zeta) {
    std::map<int, double> merged;
    for (const auto& [index, p] : entries)
        if (p > zeta) merged[index] += p;
    double total = 0.0;
    for (const auto& [index, p] : merged) total += p;
    std::vector<std::pair<int, double>> out;
    if (total <= zeta) return {{0, 1.0}};  // index 0 is the empty assortment
    for (const auto& [index, p] : merged) out.push_back({index, p / total});
    return out;
}

}  // namespace calrev
