#include "epinet/pipeline.hpp"

#include "epinet/analysis.hpp"
#include "epinet/error.hpp"

namespace epinet {

std::vector<SpreadingModel> learn_weeks(const HotspotSeries& series,
                                        std::size_t t_begin, std::size_t t_end,
                                        const LearnerConfig& config,
                                        bool search_weights,
                                        const std::vector<double>& fixed_w) {
    if (t_end >= series.y.cols() || t_begin > t_end)
        throw Error(ErrorKind::EmptyInput,
                    "week range [" + std::to_string(t_begin) + ", " +
                        std::to_string(t_end) + "] not inside the series");
    std::vector<SpreadingModel> models;
    for (std::size_t t = t_begin; t <= t_end; ++t) {
        LearnerConfig weekly = config;
        weekly.seed = config.seed + t;
        if (search_weights) {
            models.push_back(search_temporal_weights(series, t, weekly));
        } else {
            std::vector<double> w = fixed_w;
            if (w.empty())
                w.assign(config.H, 1.0 / static_cast<double>(config.H));
            models.push_back(fit_spreading_matrix(series, t, w, weekly));
        }
    }
    return models;
}

HoldoutResult evaluate_holdout(const HotspotSeries& series, std::size_t holdout,
                               const LearnerConfig& config) {
    std::size_t T = series.y.cols();
    if (holdout == 0 || holdout >= T)
        throw Error(ErrorKind::EmptyInput, "holdout span must be inside the series");

    HoldoutResult result;
    for (std::size_t v = T - holdout; v < T; ++v) {
        std::size_t t = v - 1;  // learn on the week before the held-out week
        LearnerConfig weekly = config;
        weekly.seed = config.seed + t;
        SpreadingModel model = search_temporal_weights(series, t, weekly);
        ForecastResult forecast = forecast_next_week(model, series, t);
        Confusion counts = confusion_counts(forecast.predictions, series.y.col_raw(v));
        result.weekly.push_back(weekly_metrics(counts, series.week_labels[v]));
        result.weights.push_back(model.w);
    }
    result.summary = yearly_summary(result.weekly, result.weights);
    return result;
}

std::vector<double> consecutive_ssim(const std::vector<SpreadingModel>& models) {
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < models.size(); ++k)
        out.push_back(ssim(row_normalize(models[k].P), row_normalize(models[k + 1].P)));
    return out;
}

}  // namespace epinet
