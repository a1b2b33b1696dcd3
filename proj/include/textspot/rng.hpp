#pragma once

#include <cstdint>

namespace textspot {

// splitmix64: tiny, fully specified generator so seeded outputs are
// bit-identical across platforms and standard library versions.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform in [0, n); n must be positive.
    int uniform_int(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

}  // namespace textspot
