#pragma once

#include <string>
#include <vector>

#include "epinet/evaluation.hpp"
#include "epinet/forecaster.hpp"
#include "epinet/hotspot.hpp"
#include "epinet/learner.hpp"

namespace epinet {

/// Learns one model per target week in [t_begin, t_end]. Each week uses
/// seed = config.seed + week index, so single-week runs and ranges agree.
/// When search_weights is set the temporal weights are searched per week,
/// otherwise fixed_w is used.
std::vector<SpreadingModel> learn_weeks(const HotspotSeries& series,
                                        std::size_t t_begin, std::size_t t_end,
                                        const LearnerConfig& config,
                                        bool search_weights,
                                        const std::vector<double>& fixed_w = {});

/// Holdout evaluation over the final `holdout` weeks of the series: for
/// each held-out week v, a model is learned at week v-1 (weights searched)
/// and its forecast for v is scored against the observed hotspots.
struct HoldoutResult {
    std::vector<WeeklyScore> weekly;
    YearlySummary summary;  // micro/macro over the held-out weeks
    std::vector<std::vector<double>> weights;
};
HoldoutResult evaluate_holdout(const HotspotSeries& series, std::size_t holdout,
                               const LearnerConfig& config);

/// SSIM between row-normalized consecutive weekly matrices; entry k
/// compares models[k] and models[k+1].
std::vector<double> consecutive_ssim(const std::vector<SpreadingModel>& models);

}  // namespace epinet
