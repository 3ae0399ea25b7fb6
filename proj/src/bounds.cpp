#include "calrev/bounds.hpp"

#include <cmath>

#include "calrev/common.hpp"

namespace calrev {

double delta_apx(int horizon, double b) {
    if (horizon < 1) throw ValidationError("delta_apx: horizon must be >= 1");
    if (!(b >= 1.0)) throw ValidationError("delta_apx: b must be >= 1");
    if (b > horizon + 1e-12) throw ValidationError("delta_apx: b must be <= T");
    const double T = horizon;
    if (b >= T) return 1.0;  // Bin(T, 1) is identically T
    const double p = b / T;
    const double lp = std::log(p), lq = std::log1p(-p);
    const double lgT = std::lgamma(T + 1.0);
    double acc = 0.0;
    for (int k = 0; k <= horizon; ++k) {
        double mink = std::min(static_cast<double>(k), b);
        if (mink == 0.0) continue;
        double logpmf = lgT - std::lgamma(k + 1.0) - std::lgamma(T - k + 1.0) +
                        k * lp + (T - k) * lq;
        acc += mink * std::exp(logpmf);
    }
    return acc / b;
}

double poisson_floor(double b) {
    if (!(b >= 1.0)) throw ValidationError("poisson_floor: b must be >= 1");
    return 1.0 - std::exp(b * std::log(b) - b - std::lgamma(b + 1.0));
}

double reservation_delta(double b_min) {
    if (!(b_min >= 1.0)) throw ValidationError("reservation_delta: b_min must be >= 1");
    return std::sqrt(3.0 * std::log(b_min) / b_min);
}

GuaranteeReport guarantees(const Instance& inst) {
    GuaranteeReport g;
    double b = inst.min_inventory();
    g.delta_apx = delta_apx(inst.horizon, std::min(b, static_cast<double>(inst.horizon)));
    g.poisson_floor = poisson_floor(b);
    g.reservation_delta = reservation_delta(b);
    if (inst.stationary) g.applicable.push_back("stationary-binomial (alg1/alg5)");
    g.applicable.push_back("half-of-lp (alg2/alg6)");
    if (b >= 6.0) g.applicable.push_back("large-inventory (alg3)");
    return g;
}

}  // namespace calrev
