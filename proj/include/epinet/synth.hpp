#pragma once

#include <cstdint>
#include <vector>

#include "epinet/hotspot.hpp"
#include "epinet/matrix.hpp"

namespace epinet {

/// Synthetic world with planted spreading dynamics. The forward model
/// mirrors the inference model: scores = tanh(P* . sum_h w*_h yhat^{t-h}),
/// hotspots by the strict mu + sigma indicator, presence = hotspot OR'd
/// with independent presence noise.
struct SynthScenario {
    std::size_t N = 20;
    std::size_t T = 40;
    std::size_t H = 2;
    Matrix P_star;
    std::vector<double> w_star;
    double noise_rate = 0.0;   // in [0, 0.5)
    double init_rate = 0.3;    // seed-week presence probability
    std::uint64_t seed = 0;
};

/// Seed of the committed reference world (chosen once by scanning for a
/// world whose transient stays alive through the fitting weeks and freezes
/// before the held-out tail, then pinned).
extern const std::uint64_t kReferenceWorldSeed;

/// Week used for the weight-recovery check, inside the live transient.
extern const std::size_t kReferenceRecoveryWeek;

/// Builds a scenario with a random planted matrix: each entry is nonzero
/// with probability `density`, drawn uniform(value_lo, value_hi), row-major
/// order, from a stream derived from `seed`.
SynthScenario make_planted(std::size_t N, std::size_t T, std::size_t H,
                           double density, double value_lo, double value_hi,
                           const std::vector<double>& w_star, double noise_rate,
                           std::uint64_t seed);

/// The committed acceptance fixture: N=20, T=40, H=2, 10% density with
/// values uniform(0.5, 1.5), w* = (0.8, 0.2), at kReferenceWorldSeed.
SynthScenario reference_scenario(double noise_rate);

/// Simulates the scenario forward: H seed columns of bernoulli(init_rate)
/// presence (hot = present during seeding), then T-H modeled weeks.
/// Deterministic per seed. Week labels count Sundays from 2000-01-02;
/// region ids are Z001, Z002, ... Throws InvalidScenario on degenerate
/// parameters (zero sizes, w*/P* shape mismatch, noise_rate outside
/// [0, 0.5), weights outside [0, 1]).
HotspotSeries generate(const SynthScenario& scenario);

/// Counts consistent with the series under threshold c: hot cells get c,
/// presence-only cells 1, the rest 0. Lets synthetic worlds flow through
/// the same file pipeline as real snapshots.
WeeklyCaseCounts to_counts(const HotspotSeries& series, long c);

}  // namespace epinet
