#pragma once

#include <string>
#include <vector>

#include "calrev/instance.hpp"

namespace calrev {

// The stationary guarantee E[min{Bin(T, b/T), b}] / b, computed by exact pmf
// summation with log-space binomial coefficients. b may be fractional;
// requires 1 <= b <= T.
double delta_apx(int horizon, double b);

// Lower bound 1 - b^b e^{-b} / b!, which rises from 1 - 1/e at b = 1 to 1.
double poisson_floor(double b);

// Reservation probability sqrt(3 ln(b_min) / b_min) used by the
// large-inventory policy.
double reservation_delta(double b_min);

struct GuaranteeReport {
    double delta_apx = 0.0;
    double poisson_floor = 0.0;
    double reservation_delta = 0.0;
    std::vector<std::string> applicable;  // guarantee tags for this instance
};
GuaranteeReport guarantees(const Instance& inst);

}  // namespace calrev
