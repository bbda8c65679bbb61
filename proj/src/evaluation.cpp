#include "epinet/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "epinet/error.hpp"

namespace epinet {
namespace {

double safe_div(double num, double den) { return den > 0.0 ? num / den : 0.0; }

void fill_metrics(WeeklyScore& s) {
    const auto& c = s.counts;
    s.accuracy = safe_div(static_cast<double>(c.tp + c.tn), static_cast<double>(c.total()));
    s.precision = safe_div(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
    s.recall = safe_div(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
    s.f1 = safe_div(2.0 * s.precision * s.recall, s.precision + s.recall);
}

}  // namespace

Confusion confusion_counts(const std::vector<std::uint8_t>& predictions,
                           const std::vector<std::uint8_t>& observations) {
    if (predictions.size() != observations.size())
        throw Error(ErrorKind::DimensionMismatch,
                    "predictions have " + std::to_string(predictions.size()) +
                        " entries, observations " + std::to_string(observations.size()));
    Confusion c;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        bool p = predictions[i] != 0, o = observations[i] != 0;
        if (p && o)
            ++c.tp;
        else if (p && !o)
            ++c.fp;
        else if (!p && o)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

WeeklyScore weekly_metrics(const Confusion& counts, const std::string& week) {
    if (counts.total() <= 0)
        throw Error(ErrorKind::EmptyInput, "confusion counts sum to zero");
    WeeklyScore s;
    s.week = week;
    s.counts = counts;
    fill_metrics(s);
    return s;
}

YearlySummary yearly_summary(const std::vector<WeeklyScore>& scores,
                             const std::vector<std::vector<double>>& weights) {
    if (scores.empty())
        throw Error(ErrorKind::EmptyInput, "no scored weeks to aggregate");

    YearlySummary out;
    out.weeks_scored = scores.size();
    double n = static_cast<double>(scores.size());
    for (const auto& s : scores) {
        out.accuracy_mean += s.accuracy;
        out.precision_mean += s.precision;
        out.recall_mean += s.recall;
        out.f1_mean += s.f1;
        out.pooled += s.counts;
    }
    out.accuracy_mean /= n;
    out.precision_mean /= n;
    out.recall_mean /= n;
    out.f1_mean /= n;
    double var = 0.0;
    for (const auto& s : scores) {
        double d = s.accuracy - out.accuracy_mean;
        var += d * d;
    }
    out.accuracy_std = std::sqrt(var / n);

    WeeklyScore micro = weekly_metrics(out.pooled);
    out.micro_accuracy = micro.accuracy;
    out.micro_precision = micro.precision;
    out.micro_recall = micro.recall;
    out.micro_f1 = micro.f1;

    if (!weights.empty()) {
        std::size_t H = weights.front().size();
        for (const auto& w : weights)
            if (w.size() != H)
                throw Error(ErrorKind::DimensionMismatch, "ragged weight vectors");
        for (std::size_t h = 0; h < H; ++h) {
            std::vector<double> vals;
            vals.reserve(weights.size());
            for (const auto& w : weights) vals.push_back(w[h]);
            std::sort(vals.begin(), vals.end());
            WeightStats ws;
            ws.min = vals.front();
            ws.max = vals.back();
            std::size_t m = vals.size();
            ws.median = m % 2 == 1 ? vals[m / 2] : 0.5 * (vals[m / 2 - 1] + vals[m / 2]);
            double acc = 0.0;
            for (double v : vals) acc += v;
            ws.mean = acc / static_cast<double>(m);
            out.weight_stats.push_back(ws);
        }
    }
    return out;
}

}  // namespace epinet
