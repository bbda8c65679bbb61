#include <cmath>
#include <optional>

#include "doctest.h"
#include "epinet/error.hpp"
#include "epinet/forecaster.hpp"

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

TEST_CASE("activation is an elementwise tanh") {
    auto out = activate({0.0, 1.0, -1.0, 10.0});
    REQUIRE(out.size() == 4);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == doctest::Approx(0.7615941559557649).epsilon(1e-15));
    CHECK(out[2] == doctest::Approx(-0.7615941559557649).epsilon(1e-15));
    CHECK(out[3] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(out[1] == std::tanh(1.0));
}

TEST_CASE("the indicator thresholds at mean plus one standard deviation") {
    auto [pred, threshold] = indicator_threshold({0.0, 0.0, 0.0, 1.0});
    // mu = 0.25, population sigma = sqrt(3)/4.
    CHECK(threshold == doctest::Approx(0.25 + std::sqrt(3.0) / 4.0).epsilon(1e-12));
    CHECK(pred == std::vector<std::uint8_t>{0, 0, 0, 1});
}

TEST_CASE("scores tied with the threshold predict cold") {
    auto [pred, threshold] = indicator_threshold({0.4, 0.4, 0.4});
    CHECK(threshold == doctest::Approx(0.4));
    CHECK(pred == std::vector<std::uint8_t>{0, 0, 0});

    // Two points: each score is exactly mu +- sigma, so nothing clears the
    // strict threshold.
    auto [pred2, threshold2] = indicator_threshold({0.0, 1.0});
    CHECK(threshold2 == doctest::Approx(1.0));
    CHECK(pred2 == std::vector<std::uint8_t>{0, 0});
}

TEST_CASE("forecasting applies the model to the shifted window") {
    // Two regions swapping influence: P routes presence across regions.
    HotspotSeries series;
    series.y = BitMatrix(2, 4, 0);
    series.y_hat = BitMatrix(2, 4, 0);
    series.week_labels = {"2013-W20", "2013-W21", "2013-W22", "2013-W23"};
    series.subzone_ids = {"SZ-A", "SZ-B"};
    series.y(0, 2) = series.y_hat(0, 2) = 1;  // region A present at week 2

    SpreadingModel model;
    model.P = Matrix(2, 2, 0.0);
    model.P(0, 1) = 1.0;
    model.P(1, 0) = 1.0;
    model.w = {1.0};
    model.target_week = "2013-W22";

    ForecastResult f = forecast_next_week(model, series, 2);
    CHECK(f.target_week == "2013-W23");
    REQUIRE(f.scores.size() == 2);
    // s = presence at week 2 itself (window includes the current week).
    CHECK(f.scores[0] == doctest::Approx(std::tanh(0.0)));
    CHECK(f.scores[1] == doctest::Approx(std::tanh(1.0)));
    // mu + sigma of {0, tanh(1)} equals tanh(1); strict, so no hotspot.
    CHECK(f.threshold_value == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
    CHECK(f.predictions == std::vector<std::uint8_t>{0, 0});
}

TEST_CASE("forecasting past the series end labels the next calendar week") {
    HotspotSeries series;
    series.y = BitMatrix(2, 3, 0);
    series.y_hat = BitMatrix(2, 3, 0);
    series.week_labels = {"2013-W50", "2013-W51", "2013-W52"};
    series.subzone_ids = {"SZ-A", "SZ-B"};
    series.y_hat(0, 2) = 1;

    SpreadingModel model;
    model.P = Matrix(2, 2, 0.5);
    model.w = {1.0};

    ForecastResult f = forecast_next_week(model, series, 2);
    CHECK(f.target_week == "2014-W01");
}

TEST_CASE("forecasting needs a full lookback window") {
    HotspotSeries series;
    series.y = BitMatrix(2, 4, 0);
    series.y_hat = BitMatrix(2, 4, 0);
    series.week_labels = {"w0", "w1", "w2", "w3"};
    series.subzone_ids = {"a", "b"};

    SpreadingModel model;
    model.P = Matrix(2, 2, 0.1);
    model.w = {0.5, 0.5};  // H = 2 needs weeks t and t-1

    CHECK(kind_of([&] { forecast_next_week(model, series, 0); }) ==
          ErrorKind::InsufficientHistory);
    CHECK(kind_of([&] { forecast_next_week(model, series, 4); }) ==
          ErrorKind::InsufficientHistory);
    CHECK(!kind_of([&] { forecast_next_week(model, series, 1); }));
}
