#include <optional>

#include "doctest.h"
#include "epinet/error.hpp"
#include "epinet/hotspot.hpp"
#include "epinet/synth.hpp"

using namespace epinet;

namespace {

template <typename Fn>
std::optional<ErrorKind> kind_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

SynthScenario small_world(std::uint64_t seed) {
    return make_planted(8, 15, 2, 0.3, 0.5, 1.5, {0.8, 0.2}, 0.0, seed);
}

}  // namespace

TEST_CASE("planted matrices respect density and value bounds") {
    SynthScenario empty = make_planted(6, 10, 2, 0.0, 0.5, 1.5, {0.8, 0.2}, 0.0, 1);
    for (double v : empty.P_star.data()) CHECK(v == 0.0);

    SynthScenario full = make_planted(6, 10, 2, 1.0, 0.5, 1.5, {0.8, 0.2}, 0.0, 1);
    for (double v : full.P_star.data()) {
        CHECK(v >= 0.5);
        CHECK(v < 1.5);
    }

    SynthScenario a = small_world(7), b = small_world(7), c = small_world(8);
    CHECK(a.P_star.data() == b.P_star.data());
    CHECK(a.P_star.data() != c.P_star.data());
}

TEST_CASE("generation is deterministic per seed") {
    HotspotSeries s1 = generate(small_world(3));
    HotspotSeries s2 = generate(small_world(3));
    HotspotSeries s3 = generate(small_world(4));
    CHECK(s1.y.data() == s2.y.data());
    CHECK(s1.y_hat.data() == s2.y_hat.data());
    CHECK(s1.y.data() != s3.y.data());
}

TEST_CASE("generated series carry a synthetic calendar and region ids") {
    HotspotSeries s = generate(small_world(3));
    CHECK(s.y.rows() == 8);
    CHECK(s.y.cols() == 15);
    REQUIRE(s.week_labels.size() == 15);
    CHECK(s.week_labels[0] == "2000-W01");
    CHECK(s.week_labels[1] == "2000-W02");
    CHECK(s.subzone_ids[0] == "Z001");
    CHECK(s.subzone_ids[7] == "Z008");
}

TEST_CASE("hotspots imply presence, with and without noise") {
    for (double noise : {0.0, 0.05, 0.2}) {
        SynthScenario sc = make_planted(8, 15, 2, 0.3, 0.5, 1.5, {0.8, 0.2}, noise, 3);
        HotspotSeries s = generate(sc);
        for (std::size_t k = 0; k < s.y.data().size(); ++k)
            CHECK(s.y.data()[k] <= s.y_hat.data()[k]);
    }
}

TEST_CASE("presence noise only ever adds presences") {
    SynthScenario clean = small_world(3);
    SynthScenario noisy = make_planted(8, 15, 2, 0.3, 0.5, 1.5, {0.8, 0.2}, 0.2, 3);
    HotspotSeries a = generate(clean);
    HotspotSeries b = generate(noisy);
    // The planted matrix and seed columns agree, so the first modeled week
    // has identical hotspots; its presences can only gain entries.
    for (std::size_t i = 0; i < a.y.rows(); ++i) {
        CHECK(a.y(i, 2) == b.y(i, 2));
        CHECK(a.y_hat(i, 2) <= b.y_hat(i, 2));
    }
}

TEST_CASE("degenerate scenarios are rejected up front") {
    CHECK(kind_of([] {
              make_planted(0, 10, 2, 0.3, 0.5, 1.5, {0.8, 0.2}, 0.0, 1);
          }) == ErrorKind::InvalidScenario);
    CHECK(kind_of([] {
              make_planted(5, 2, 2, 0.3, 0.5, 1.5, {0.8, 0.2}, 0.0, 1);
          }) == ErrorKind::InvalidScenario);  // T must exceed H
    CHECK(kind_of([] {
              make_planted(5, 10, 2, 0.3, 0.5, 1.5, {0.8}, 0.0, 1);
          }) == ErrorKind::InvalidScenario);  // w* length
    CHECK(kind_of([] {
              make_planted(5, 10, 2, 0.3, 0.5, 1.5, {0.8, 1.2}, 0.0, 1);
          }) == ErrorKind::InvalidScenario);  // w* range
    CHECK(kind_of([] {
              make_planted(5, 10, 2, 0.3, 0.5, 1.5, {0.8, 0.2}, 0.5, 1);
          }) == ErrorKind::InvalidScenario);  // noise too high

    SynthScenario bad_shape = small_world(1);
    bad_shape.P_star = Matrix(3, 3, 0.1);
    CHECK(kind_of([&] { generate(bad_shape); }) == ErrorKind::InvalidScenario);

    SynthScenario bad_init = small_world(1);
    bad_init.init_rate = 1.5;
    CHECK(kind_of([&] { generate(bad_init); }) == ErrorKind::InvalidScenario);
}

TEST_CASE("counts rebuild the exact series through the threshold") {
    HotspotSeries s = generate(small_world(3));
    for (long c : {2L, 3L, 5L}) {
        WeeklyCaseCounts counts = to_counts(s, c);
        for (std::size_t i = 0; i < s.y.rows(); ++i)
            for (std::size_t t = 0; t < s.y.cols(); ++t) {
                long expect = s.y(i, t) ? c : (s.y_hat(i, t) ? 1 : 0);
                CHECK(counts.counts(i, t) == expect);
            }
        HotspotSeries back = binarize(counts, c);
        CHECK(back.y.data() == s.y.data());
        CHECK(back.y_hat.data() == s.y_hat.data());
        CHECK(back.week_labels == s.week_labels);
    }
}

TEST_CASE("the reference scenario is pinned") {
    SynthScenario ref = reference_scenario(0.0);
    CHECK(ref.N == 20);
    CHECK(ref.T == 40);
    CHECK(ref.H == 2);
    CHECK(ref.w_star == std::vector<double>{0.8, 0.2});
    CHECK(ref.seed == kReferenceWorldSeed);
    CHECK(ref.noise_rate == 0.0);

    std::size_t nonzero = 0;
    for (double v : ref.P_star.data()) {
        if (v != 0.0) {
            ++nonzero;
            CHECK(v >= 0.5);
            CHECK(v < 1.5);
        }
    }
    // 10% density over 400 entries; the draw should land near 40.
    CHECK(nonzero > 15);
    CHECK(nonzero < 70);

    HotspotSeries s = generate(ref);
    CHECK(s.y.rows() == 20);
    CHECK(s.y.cols() == 40);
    CHECK(kReferenceRecoveryWeek >= ref.H);
    CHECK(kReferenceRecoveryWeek < ref.T);
}
