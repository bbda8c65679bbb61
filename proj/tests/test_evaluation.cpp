#include <cmath>
#include <optional>

#include "doctest.h"
#include "epinet/error.hpp"
#include "epinet/evaluation.hpp"
#include "epinet/rng.hpp"

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

}  // namespace

TEST_CASE("confusion counts match a brute-force tally") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 40.0));
        std::vector<std::uint8_t> pred(n), obs(n);
        for (auto& v : pred) v = rng.bernoulli(0.3) ? 1 : 0;
        for (auto& v : obs) v = rng.bernoulli(0.3) ? 1 : 0;

        Confusion c = confusion_counts(pred, obs);
        long tp = 0, fp = 0, tn = 0, fn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pred[i] && obs[i]) ++tp;
            if (pred[i] && !obs[i]) ++fp;
            if (!pred[i] && !obs[i]) ++tn;
            if (!pred[i] && obs[i]) ++fn;
        }
        CHECK(c.tp == tp);
        CHECK(c.fp == fp);
        CHECK(c.tn == tn);
        CHECK(c.fn == fn);
        CHECK(c.total() == static_cast<long>(n));
    }
    CHECK(kind_of([] { confusion_counts({1, 0}, {1}); }) ==
          ErrorKind::DimensionMismatch);
}

TEST_CASE("weekly metrics follow the textbook ratios") {
    Confusion c{3, 1, 90, 6};
    WeeklyScore s = weekly_metrics(c, "2013-W24");
    CHECK(s.week == "2013-W24");
    CHECK(s.accuracy == doctest::Approx(0.93));
    CHECK(s.precision == doctest::Approx(0.75));
    CHECK(s.recall == doctest::Approx(1.0 / 3.0));
    CHECK(s.f1 == doctest::Approx(2.0 * 0.75 * (1.0 / 3.0) / (0.75 + 1.0 / 3.0)));
}

TEST_CASE("zero denominators yield zero, not NaN") {
    WeeklyScore s = weekly_metrics(Confusion{0, 0, 100, 0});
    CHECK(s.accuracy == 1.0);
    CHECK(s.precision == 0.0);
    CHECK(s.recall == 0.0);
    CHECK(s.f1 == 0.0);

    WeeklyScore t = weekly_metrics(Confusion{0, 5, 90, 5});
    CHECK(t.precision == 0.0);
    CHECK(t.recall == 0.0);
    CHECK(t.f1 == 0.0);
    CHECK(!std::isnan(t.f1));

    CHECK(kind_of([] { weekly_metrics(Confusion{0, 0, 0, 0}); }) ==
          ErrorKind::EmptyInput);
}

TEST_CASE("yearly summary separates macro and micro views") {
    // Week 1 is perfect, week 2 finds nothing; pooled counts tell a third
    // story, which is the point of keeping both.
    std::vector<WeeklyScore> scores = {
        weekly_metrics(Confusion{10, 0, 90, 0}, "2013-W01"),
        weekly_metrics(Confusion{0, 0, 90, 10}, "2013-W02"),
    };
    YearlySummary y = yearly_summary(scores);
    CHECK(y.weeks_scored == 2);
    CHECK(y.accuracy_mean == doctest::Approx(0.95));
    CHECK(y.accuracy_std == doctest::Approx(0.05));  // population, not sample
    CHECK(y.precision_mean == doctest::Approx(0.5));
    CHECK(y.recall_mean == doctest::Approx(0.5));
    CHECK(y.f1_mean == doctest::Approx(0.5));

    CHECK(y.pooled.tp == 10);
    CHECK(y.pooled.fn == 10);
    CHECK(y.pooled.tn == 180);
    CHECK(y.micro_accuracy == doctest::Approx(190.0 / 200.0));
    CHECK(y.micro_precision == doctest::Approx(1.0));
    CHECK(y.micro_recall == doctest::Approx(0.5));
    CHECK(y.micro_f1 == doctest::Approx(2.0 / 3.0));

    CHECK(kind_of([] { yearly_summary({}); }) == ErrorKind::EmptyInput);
}

TEST_CASE("weight statistics use the even-count median convention") {
    std::vector<WeeklyScore> scores = {weekly_metrics(Confusion{1, 1, 1, 1}, "w")};
    std::vector<std::vector<double>> weights = {
        {0.8, 0.2}, {0.6, 0.4}, {0.2, 0.8}, {0.4, 0.6}};
    YearlySummary y = yearly_summary(scores, weights);
    REQUIRE(y.weight_stats.size() == 2);
    CHECK(y.weight_stats[0].min == doctest::Approx(0.2));
    CHECK(y.weight_stats[0].max == doctest::Approx(0.8));
    CHECK(y.weight_stats[0].mean == doctest::Approx(0.5));
    CHECK(y.weight_stats[0].median == doctest::Approx(0.5));  // avg of 0.4, 0.6
    CHECK(y.weight_stats[1].median == doctest::Approx(0.5));

    std::vector<std::vector<double>> odd = {{0.8, 0.2}, {0.6, 0.4}, {0.1, 0.9}};
    YearlySummary z = yearly_summary(scores, odd);
    CHECK(z.weight_stats[0].median == doctest::Approx(0.6));

    std::vector<std::vector<double>> ragged = {{0.8, 0.2}, {1.0}};
    CHECK(kind_of([&] { yearly_summary(scores, ragged); }) ==
          ErrorKind::DimensionMismatch);
}
