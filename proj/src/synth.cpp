#include "epinet/synth.hpp"

#include <cmath>
#include <cstdio>

#include "epinet/date.hpp"
#include "epinet/error.hpp"
#include "epinet/rng.hpp"
#include "epinet/week.hpp"

namespace epinet {

// Pinned by scanning seeds 1..600 for a world whose hotspot pattern keeps
// changing through the recovery week and freezes to a mixed fixed point
// well before the held-out tail. Seed 187 last changes at week 12, holds
// 5 of 20 regions hot thereafter, and recovers the planted temporal
// weights at every candidate week 11..16.
const std::uint64_t kReferenceWorldSeed = 187;
const std::size_t kReferenceRecoveryWeek = 12;

namespace {

// Distinct streams so the planted matrix and the trajectory draws never
// overlap even though both derive from the one scenario seed.
constexpr std::uint64_t kMatrixStreamTag = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kSeriesStreamTag = 0xbf58476d1ce4e5b9ULL;

void validate(const SynthScenario& sc) {
    if (sc.N < 1 || sc.T < 1 || sc.H < 1)
        throw Error(ErrorKind::InvalidScenario, "N, T, H must all be >= 1");
    if (sc.T <= sc.H)
        throw Error(ErrorKind::InvalidScenario, "T must exceed the lookback H");
    if (sc.P_star.rows() != sc.N || sc.P_star.cols() != sc.N)
        throw Error(ErrorKind::InvalidScenario, "P_star must be N x N");
    if (sc.w_star.size() != sc.H)
        throw Error(ErrorKind::InvalidScenario, "w_star must have H entries");
    for (double w : sc.w_star)
        if (w < 0.0 || w > 1.0)
            throw Error(ErrorKind::InvalidScenario, "w_star entries must be in [0, 1]");
    if (sc.noise_rate < 0.0 || sc.noise_rate >= 0.5)
        throw Error(ErrorKind::InvalidScenario, "noise_rate must be in [0, 0.5)");
    if (sc.init_rate < 0.0 || sc.init_rate > 1.0)
        throw Error(ErrorKind::InvalidScenario, "init_rate must be in [0, 1]");
}

std::string region_id(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "Z%03zu", i + 1);
    return buf;
}

}  // namespace

SynthScenario make_planted(std::size_t N, std::size_t T, std::size_t H,
                           double density, double value_lo, double value_hi,
                           const std::vector<double>& w_star, double noise_rate,
                           std::uint64_t seed) {
    SynthScenario sc;
    sc.N = N;
    sc.T = T;
    sc.H = H;
    sc.w_star = w_star;
    sc.noise_rate = noise_rate;
    sc.seed = seed;
    sc.P_star = Matrix(N, N, 0.0);
    Rng rng(seed ^ kMatrixStreamTag);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (rng.uniform() < density) sc.P_star(i, j) = rng.uniform(value_lo, value_hi);
    validate(sc);
    return sc;
}

SynthScenario reference_scenario(double noise_rate) {
    return make_planted(20, 40, 2, 0.10, 0.5, 1.5, {0.8, 0.2}, noise_rate,
                        kReferenceWorldSeed);
}

HotspotSeries generate(const SynthScenario& sc) {
    validate(sc);
    const std::size_t N = sc.N, T = sc.T, H = sc.H;
    Rng rng(sc.seed ^ kSeriesStreamTag);

    HotspotSeries series;
    series.c = 3;
    series.y = BitMatrix(N, T, 0);
    series.y_hat = BitMatrix(N, T, 0);
    for (std::size_t i = 0; i < N; ++i) series.subzone_ids.push_back(region_id(i));
    // Synthetic calendar: consecutive Sunday-started weeks from 2000-01-02.
    WeekRule rule;
    EpiWeek week0 = week_of(Date{2000, 1, 2}, rule);
    for (std::size_t t = 0; t < T; ++t)
        series.week_labels.push_back(
            week_label(EpiWeek{week0.start_serial + static_cast<long>(t) * 7}));

    // Seed weeks: presence drawn per region; hot mirrors presence.
    for (std::size_t t = 0; t < H; ++t) {
        for (std::size_t i = 0; i < N; ++i) {
            if (rng.bernoulli(sc.init_rate)) {
                series.y(i, t) = 1;
                series.y_hat(i, t) = 1;
            }
        }
    }

    for (std::size_t t = H; t < T; ++t) {
        std::vector<double> s(N, 0.0);
        for (std::size_t h = 0; h < H; ++h)
            for (std::size_t i = 0; i < N; ++i)
                s[i] += sc.w_star[h] * static_cast<double>(series.y_hat(i, t - 1 - h));
        std::vector<double> x(N, 0.0);
        for (std::size_t i = 0; i < N; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < N; ++j) acc += sc.P_star(i, j) * s[j];
            x[i] = std::tanh(acc);
        }
        double mu = 0.0;
        for (double v : x) mu += v;
        mu /= static_cast<double>(N);
        double var = 0.0;
        for (double v : x) var += (v - mu) * (v - mu);
        double sigma = std::sqrt(var / static_cast<double>(N));
        for (std::size_t i = 0; i < N; ++i) {
            if (x[i] > mu + sigma) {
                series.y(i, t) = 1;
                series.y_hat(i, t) = 1;
            }
        }
        // Presence noise ORs spurious presences in; it never clears one, so
        // hot implies present even under noise. Draws happen only when the
        // rate is positive, keeping noiseless streams identical.
        if (sc.noise_rate > 0.0) {
            for (std::size_t i = 0; i < N; ++i)
                if (rng.bernoulli(sc.noise_rate)) series.y_hat(i, t) = 1;
        }
    }
    return series;
}

WeeklyCaseCounts to_counts(const HotspotSeries& series, long c) {
    WeeklyCaseCounts out;
    out.week_labels = series.week_labels;
    out.subzone_ids = series.subzone_ids;
    out.counts = Mat<long>(series.y.rows(), series.y.cols(), 0);
    for (std::size_t i = 0; i < series.y.rows(); ++i)
        for (std::size_t t = 0; t < series.y.cols(); ++t)
            out.counts(i, t) = series.y(i, t) ? c : (series.y_hat(i, t) ? 1 : 0);
    return out;
}

}  // namespace epinet
