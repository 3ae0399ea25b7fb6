#include "calrev/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "calrev/common.hpp"

namespace calrev {

DemandDistribution::DemandDistribution(std::vector<double> values,
                                       std::vector<double> probs) {
    if (values.size() != probs.size() || values.empty())
        throw ValidationError("distribution: values/probs size mismatch or empty");
    // Merge duplicate atoms and sort ascending.
    std::map<double, double> merged;
    double total = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!(values[k] >= 0.0 && values[k] <= 1.0))
            throw ValidationError("distribution: support value outside [0,1]");
        if (probs[k] < -1e-15)
            throw ValidationError("distribution: negative probability");
        if (probs[k] <= 0.0) continue;
        merged[values[k]] += probs[k];
        total += probs[k];
    }
    if (std::fabs(total - 1.0) > 1e-12)
        throw ValidationError("distribution: probabilities sum to " +
                              std::to_string(total) + ", expected 1");
    if (merged.empty()) throw ValidationError("distribution: empty support");
    double cum = 0.0;
    for (const auto& [v, p] : merged) {
        values_.push_back(v);
        probs_.push_back(p);
        cum += p;
        cum_.push_back(cum);
    }
    cum_.back() = 1.0;
}

DemandDistribution DemandDistribution::point_mass(double value) {
    return DemandDistribution({value}, {1.0});
}

DemandDistribution DemandDistribution::bernoulli(double mean) {
    if (mean < 0.0 || mean > 1.0)
        throw ValidationError("bernoulli: mean outside [0,1]");
    if (mean <= 0.0) return point_mass(0.0);
    if (mean >= 1.0) return point_mass(1.0);
    return DemandDistribution({0.0, 1.0}, {1.0 - mean, mean});
}

DemandDistribution DemandDistribution::scaled_binomial(int n, double beta) {
    if (n < 1) throw ValidationError("scaled_binomial: n must be >= 1");
    if (beta < 0.0 || beta > 1.0)
        throw ValidationError("scaled_binomial: beta outside [0,1]");
    std::vector<double> values(n + 1), probs(n + 1);
    for (int k = 0; k <= n; ++k) {
        values[k] = static_cast<double>(k) / n;
        double lp = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                    std::lgamma(n - k + 1.0);
        if (beta > 0.0) lp += k * std::log(beta);
        else if (k > 0) { probs[k] = 0.0; continue; }
        if (beta < 1.0) lp += (n - k) * std::log1p(-beta);
        else if (k < n) { probs[k] = 0.0; continue; }
        probs[k] = std::exp(lp);
    }
    double s = 0.0;
    for (double p : probs) s += p;
    for (double& p : probs) p /= s;
    return DemandDistribution(std::move(values), std::move(probs));
}

DemandDistribution DemandDistribution::truncated_exponential(double lambda,
                                                             int grid) {
    if (lambda <= 0.0) throw ValidationError("truncated_exponential: lambda <= 0");
    if (grid < 2) throw ValidationError("truncated_exponential: grid < 2");
    auto cdf = [lambda](double x) {
        return (1.0 - std::exp(-lambda * x)) / (1.0 - std::exp(-lambda));
    };
    std::vector<double> values(grid), probs(grid);
    for (int k = 0; k < grid; ++k) {
        double lo = static_cast<double>(k) / grid;
        double hi = static_cast<double>(k + 1) / grid;
        values[k] = (lo + hi) / 2.0;
        probs[k] = cdf(hi) - cdf(lo);
    }
    double s = 0.0;
    for (double p : probs) s += p;
    for (double& p : probs) p /= s;
    return DemandDistribution(std::move(values), std::move(probs));
}

double DemandDistribution::mean() const {
    double m = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) m += values_[k] * probs_[k];
    return m;
}

double DemandDistribution::cdf(double x) const {
    double c = 0.0;
    for (std::size_t k = 0; k < values_.size() && values_[k] <= x; ++k)
        c += probs_[k];
    return c;
}

double DemandDistribution::truncated_mean(double c) const {
    double m = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k)
        m += std::min(c, values_[k]) * probs_[k];
    return m;
}

double DemandDistribution::sample(double u) const {
    auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    std::size_t k = static_cast<std::size_t>(it - cum_.begin());
    if (k >= values_.size()) k = values_.size() - 1;
    return values_[k];
}

bool DemandDistribution::is_zero_one() const {
    for (double v : values_)
        if (v != 0.0 && v != 1.0) return false;
    return true;
}

}  // namespace calrev
