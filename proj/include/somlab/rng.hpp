#pragma once

#include <cstdint>
#include <random>

namespace somlab {

/// splitmix64 mixing step; used to derive independent seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed for replicate k of sweep index j. Documented in the README so
/// result rows can be reproduced in isolation.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t j, std::uint64_t k) {
    return master ^ splitmix64((j << 32) ^ k ^ 0xD1B54A32D192ED03ull);
}

/// Deterministic uniform generator. Doubles are built from the top 53
/// bits of a mt19937_64 draw, so streams are identical across platforms
/// (std::uniform_real_distribution is implementation-defined and is
/// deliberately avoided).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform draw in [0, 1).
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    /// Uniform draw in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

private:
    std::mt19937_64 gen_;
};

}  // namespace somlab
