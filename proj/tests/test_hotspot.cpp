#include <optional>

#include "doctest.h"
#include "epinet/error.hpp"
#include "epinet/hotspot.hpp"
#include "epinet/rng.hpp"

using namespace epinet;

namespace {

WeeklyCaseCounts small_counts() {
    WeeklyCaseCounts counts;
    counts.counts = Mat<long>(2, 3, 0);
    counts.counts(0, 0) = 0;
    counts.counts(0, 1) = 1;
    counts.counts(0, 2) = 2;
    counts.counts(1, 0) = 3;
    counts.counts(1, 1) = 5;
    counts.counts(1, 2) = 0;
    counts.week_labels = {"2013-W24", "2013-W25", "2013-W26"};
    counts.subzone_ids = {"SZ-A", "SZ-B"};
    return counts;
}

}  // namespace

TEST_CASE("binarize splits counts into hotspot and presence states") {
    HotspotSeries series = binarize(small_counts(), 3);
    CHECK(series.c == 3);
    CHECK(series.week_labels == small_counts().week_labels);
    CHECK(series.subzone_ids == small_counts().subzone_ids);

    // Hotspot needs the full threshold; presence needs a single locality.
    CHECK(series.y(0, 0) == 0);
    CHECK(series.y(0, 1) == 0);
    CHECK(series.y(0, 2) == 0);
    CHECK(series.y(1, 0) == 1);
    CHECK(series.y(1, 1) == 1);
    CHECK(series.y(1, 2) == 0);
    CHECK(series.y_hat(0, 0) == 0);
    CHECK(series.y_hat(0, 1) == 1);
    CHECK(series.y_hat(0, 2) == 1);
    CHECK(series.y_hat(1, 0) == 1);
    CHECK(series.y_hat(1, 1) == 1);
    CHECK(series.y_hat(1, 2) == 0);
}

TEST_CASE("a threshold of one collapses hotspot onto presence") {
    HotspotSeries series = binarize(small_counts(), 1);
    CHECK(series.y.data() == series.y_hat.data());
}

TEST_CASE("thresholds below one are invalid") {
    for (long c : {0L, -1L, -100L}) {
        try {
            binarize(small_counts(), c);
            FAIL("expected a threshold error for c = " << c);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::InvalidThreshold);
        }
    }
}

TEST_CASE("hotspots imply presence and shrink as the threshold rises") {
    Rng rng(99);
    WeeklyCaseCounts counts;
    counts.counts = Mat<long>(8, 12, 0);
    for (auto& v : counts.counts.data())
        v = static_cast<long>(rng.uniform(0.0, 7.0));
    for (std::size_t t = 0; t < 12; ++t)
        counts.week_labels.push_back("w" + std::to_string(t));
    for (std::size_t i = 0; i < 8; ++i)
        counts.subzone_ids.push_back("z" + std::to_string(i));

    HotspotSeries prev = binarize(counts, 1);
    for (long c = 2; c <= 8; ++c) {
        HotspotSeries cur = binarize(counts, c);
        for (std::size_t k = 0; k < cur.y.data().size(); ++k) {
            CHECK(cur.y.data()[k] <= cur.y_hat.data()[k]);
            // Raising the threshold never creates a hotspot.
            CHECK(cur.y.data()[k] <= prev.y.data()[k]);
        }
        // Presence ignores the threshold entirely.
        CHECK(cur.y_hat.data() == prev.y_hat.data());
        prev = cur;
    }
}
