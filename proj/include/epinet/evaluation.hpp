#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace epinet {

/// Confusion counts for one week's forecast against observation.
struct Confusion {
    long tp = 0;
    long fp = 0;
    long tn = 0;
    long fn = 0;

    long total() const { return tp + fp + tn + fn; }
    Confusion& operator+=(const Confusion& o) {
        tp += o.tp;
        fp += o.fp;
        tn += o.tn;
        fn += o.fn;
        return *this;
    }
};

/// Per-week score. Zero-denominator conventions: precision = 0 when
/// tp + fp = 0, recall = 0 when tp + fn = 0, f1 = 0 when both are 0.
struct WeeklyScore {
    std::string week;
    Confusion counts;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// min / median / mean / max of one temporal weight across scored weeks.
/// The median of an even count is the average of the middle two.
struct WeightStats {
    double min = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double max = 0.0;
};

/// Year-level aggregation: macro statistics (over weekly scores), micro
/// statistics (from the pooled confusion), and weight distributions.
struct YearlySummary {
    std::string year;
    std::size_t weeks_scored = 0;
    double accuracy_mean = 0.0;
    double accuracy_std = 0.0;  // population std over weeks
    double precision_mean = 0.0;
    double recall_mean = 0.0;
    double f1_mean = 0.0;
    Confusion pooled;
    double micro_accuracy = 0.0;
    double micro_precision = 0.0;
    double micro_recall = 0.0;
    double micro_f1 = 0.0;
    std::vector<WeightStats> weight_stats;  // one per lookback position h
};

/// Tallies the four confusion cells. Throws DimensionMismatch on unequal
/// lengths.
Confusion confusion_counts(const std::vector<std::uint8_t>& predictions,
                           const std::vector<std::uint8_t>& observations);

/// Computes accuracy / precision / recall / f1 from the counts under the
/// zero-denominator conventions above. Throws EmptyInput when all four
/// counts are zero.
WeeklyScore weekly_metrics(const Confusion& counts, const std::string& week = "");

/// Aggregates weekly scores (macro means, micro pooled metrics) and, when
/// weight vectors are supplied, per-position weight distributions.
/// Throws EmptyInput when scores is empty.
YearlySummary yearly_summary(const std::vector<WeeklyScore>& scores,
                             const std::vector<std::vector<double>>& weights = {});

}  // namespace epinet
