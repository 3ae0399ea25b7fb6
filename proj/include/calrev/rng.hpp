#pragma once

#include <cstdint>

namespace calrev {

// Counter-based uniform stream. Every draw is a pure function of
// (seed, replication, period, draw index), so replications can be computed
// in any order, on any thread, and still see identical numbers. The mixing
// function is the SplitMix64 finalizer, applied once per key word; this is
// the repo-wide generator constant.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class RngStream {
public:
    RngStream(uint64_t seed, uint64_t replication)
        : base_(mix64(mix64(seed) ^ replication)) {}

    void begin_period(uint64_t period) {
        period_key_ = mix64(base_ ^ period);
        draw_ = 0;
    }

    uint64_t next_u64() { return mix64(period_key_ ^ draw_++); }

    // Uniform in [0, 1), 53 bits of randomness.
    double next() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    uint64_t base_;
    uint64_t period_key_ = 0;
    uint64_t draw_ = 0;
};

}  // namespace calrev
