#pragma once

#include <cstdint>
#include <random>

namespace epinet {

/// Deterministic random source. Wraps std::mt19937_64 (whose output stream
/// is mandated by the standard) with explicit value mappings, so identical
/// seeds give bit-identical draws on every conforming platform.
/// std::uniform_real_distribution is implementation-defined and is
/// deliberately not used.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + uniform() * (hi - lo);
    }

    /// Bernoulli draw with success probability p.
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 gen_;
};

}  // namespace epinet
