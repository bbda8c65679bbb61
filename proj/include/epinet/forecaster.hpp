#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epinet/hotspot.hpp"
#include "epinet/learner.hpp"

namespace epinet {

/// One-week-ahead forecast: activated scores and thresholded predictions.
struct ForecastResult {
    std::vector<double> scores;
    std::vector<std::uint8_t> predictions;
    double threshold_value = 0.0;  // mu + sigma of the scores
    std::string target_week;
};

/// Element-wise hyperbolic tangent.
std::vector<double> activate(const std::vector<double>& raw_estimates);

/// Thresholds scores at mu + sigma (population standard deviation, strict
/// inequality; ties predict 0). Returns the predictions and the threshold.
std::pair<std::vector<std::uint8_t>, double> indicator_threshold(
    const std::vector<double>& scores);

/// Forecasts week t+1 from the model and the presence history ending at t:
/// scores = tanh(P * sum_h w_h yhat^{t+1-h}), predictions by
/// indicator_threshold. The history window is shifted one week forward
/// relative to training (most recent column is week t itself).
/// Throws InsufficientHistory when fewer than H weeks end at t.
ForecastResult forecast_next_week(const SpreadingModel& model,
                                  const HotspotSeries& hotspots,
                                  std::size_t current_week);

}  // namespace epinet
