#pragma once

#include <string>
#include <vector>

namespace calrev {

// Finite-support demand distribution on [0,1]. All expectations used by the
// toolkit (means, truncated means, truncation ratios, exact policy values)
// are exact sums over the support. Continuous families enter through a
// fixed-grid discretization (see truncated_exponential).
class DemandDistribution {
public:
    DemandDistribution() = default;

    // values in [0,1], probabilities summing to 1 within 1e-12.
    DemandDistribution(std::vector<double> values, std::vector<double> probs);

    static DemandDistribution point_mass(double value);
    // P(Q = 1) = mean, P(Q = 0) = 1 - mean.
    static DemandDistribution bernoulli(double mean);
    // Bin(n, beta) / n on the support {0, 1/n, ..., 1}.
    static DemandDistribution scaled_binomial(int n, double beta);
    // Exponential(lambda) truncated to [0,1], discretized onto `grid` cells
    // with atoms at the cell midpoints carrying the cell mass. An
    // approximation of the continuous law; grid defaults to 64 atoms.
    static DemandDistribution truncated_exponential(double lambda, int grid = 64);

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return values_.size(); }

    double mean() const;
    // P(Q <= x)
    double cdf(double x) const;
    // E[min(c, Q)]
    double truncated_mean(double c) const;
    // Inverse-CDF sample from a uniform u in [0,1).
    double sample(double u) const;

    bool is_zero_one() const;  // support contained in {0, 1}

private:
    std::vector<double> values_;  // ascending, distinct
    std::vector<double> probs_;
    std::vector<double> cum_;  // cumulative probabilities
};

}  // namespace calrev
