#pragma once

#include <stdexcept>
#include <string>

namespace calrev {

// Input / configuration problems. The CLI maps these to exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures (solver stall, state-space cap, ...). CLI exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Support threshold: a variable or probability below this is treated as zero
// everywhere (LP supports, calendar distributions, candidate sets).
inline constexpr double kSupportTol = 1e-9;

}  // namespace calrev
