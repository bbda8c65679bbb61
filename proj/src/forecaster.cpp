#include "epinet/forecaster.hpp"

#include <cmath>

#include "epinet/error.hpp"
#include "epinet/week.hpp"

namespace epinet {

std::vector<double> activate(const std::vector<double>& raw_estimates) {
    std::vector<double> out(raw_estimates.size());
    for (std::size_t i = 0; i < raw_estimates.size(); ++i)
        out[i] = std::tanh(raw_estimates[i]);
    return out;
}

std::pair<std::vector<std::uint8_t>, double> indicator_threshold(
    const std::vector<double>& scores) {
    double mu = 0.0;
    for (double v : scores) mu += v;
    mu /= static_cast<double>(scores.size());
    double var = 0.0;
    for (double v : scores) var += (v - mu) * (v - mu);
    double sigma = std::sqrt(var / static_cast<double>(scores.size()));
    double threshold = mu + sigma;
    std::vector<std::uint8_t> pred(scores.size(), 0);
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (scores[i] > threshold) pred[i] = 1;
    return {std::move(pred), threshold};
}

ForecastResult forecast_next_week(const SpreadingModel& model,
                                  const HotspotSeries& hotspots,
                                  std::size_t current_week) {
    const std::size_t H = model.w.size();
    if (current_week + 1 < H || current_week >= hotspots.y_hat.cols()) {
        std::string label = current_week < hotspots.week_labels.size()
                                ? hotspots.week_labels[current_week]
                                : "#" + std::to_string(current_week);
        throw Error(ErrorKind::InsufficientHistory,
                    "forecast from week " + label + " needs " + std::to_string(H) +
                        " weeks of history ending there");
    }
    // Forecast-shifted window: hist[h] = yhat^{t-h}, h = 0..H-1.
    History hist;
    for (std::size_t h = 0; h < H; ++h)
        hist.push_back(hotspots.y_hat.col(current_week - h));

    ForecastResult result;
    result.scores = activate(estimate(model.P, model.w, hist));
    auto [pred, threshold] = indicator_threshold(result.scores);
    result.predictions = std::move(pred);
    result.threshold_value = threshold;
    if (current_week + 1 < hotspots.week_labels.size()) {
        result.target_week = hotspots.week_labels[current_week + 1];
    } else if (!hotspots.week_labels.empty()) {
        // One step past the series end: advance the last label by a week.
        WeekRule rule;
        if (auto wk = parse_week_label(hotspots.week_labels.back(), rule))
            result.target_week = week_label(wk->next());
    }
    return result;
}

}  // namespace epinet
