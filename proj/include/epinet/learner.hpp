#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epinet/hotspot.hpp"
#include "epinet/matrix.hpp"

namespace epinet {

/// Solver and search settings for one target week.
struct LearnerConfig {
    std::size_t H = 4;              ///< lookback weeks
    double lambda1 = 0.01;          ///< L2 coefficient
    double lambda2 = 0.1;           ///< L1 coefficient
    double learning_rate = 0.01;    ///< initial step size (halved on loss increase)
    std::size_t max_iters = 500;    ///< accepted-update cap
    double tolerance = 1e-6;        ///< relative loss-change stopping threshold
    double weight_grid_step = 0.1;  ///< coarse sweep increment for the w search
    double weight_refine_step = 0.01;  ///< refinement increment (skipped unless < coarse)
    std::size_t weight_window = 14;    ///< trailing weeks scored by the w search
    std::size_t weight_rounds = 5;     ///< alternating fit/sweep rounds
    double sparsify_floor = 1e-3;      ///< post-fit |P_ij| floor; below it entries snap to 0
    std::uint64_t seed = 0;            ///< PRNG seed for P initialization
};

/// Learned model for one target week: spreading matrix P (entry (i,j) is
/// the link weight from subzone j to subzone i) and temporal weights w.
struct SpreadingModel {
    Matrix P;
    std::vector<double> w;
    std::string target_week;
    double final_loss = 0.0;
    std::size_t iterations_used = 0;
};

/// Presence history columns ordered most recent first: for a fit targeting
/// week t, hist[h] is the presence column of week t-1-h (h = 0..H-1).
using History = std::vector<std::vector<double>>;

/// Accepted-loss sequence recorder: losses[0] is the initial loss, each
/// subsequent entry one accepted update. Non-increasing by construction.
struct FitTrace {
    std::vector<double> losses;
};

/// Records every candidate w evaluated by the weight search sweeps.
struct WeightSearchTrace {
    std::vector<std::vector<double>> evaluated;
};

/// The weighted history combination s = sum_h w_h * hist[h].
/// Throws DimensionMismatch on inconsistent lengths.
std::vector<double> combine_history(const std::vector<double>& w, const History& hist);

/// Estimated hotspot intensities: sum_h w_h * P * hist[h], evaluated in the
/// factored form P * (sum_h w_h hist[h]).
std::vector<double> estimate(const Matrix& P, const std::vector<double>& w,
                             const History& hist);

/// Regularized squared loss: sum_i (estimate_i - y_i)^2
/// + lambda1 * sum_ij P_ij^2 + lambda2 * sum_ij |P_ij|.
double loss(const Matrix& P, const std::vector<double>& w, const History& hist,
            const std::vector<double>& y_target, double lambda1, double lambda2);

/// Gradient of the loss restricted to row i of P:
/// 2 * (P_row . s - y_i) * s + 2 * lambda1 * P_row + lambda2 * sign(P_row),
/// with s = combine_history(w, hist) and sign(0) = 0.
std::vector<double> row_gradient(const std::vector<double>& P_row,
                                 const std::vector<double>& w, const History& hist,
                                 double y_i_target, double lambda1, double lambda2);

/// Extracts the training history for a target week (presence columns
/// t-1 .. t-H). Throws InsufficientHistory when t < H.
History training_history(const HotspotSeries& hotspots, std::size_t target_week,
                         std::size_t H);

/// Fits P for one target week with w held fixed: seeded uniform(0, 0.01)
/// initialization, full-matrix subgradient steps with step halving whenever
/// the loss would increase, stopping at max_iters accepted updates or
/// relative loss change < tolerance. Entries below sparsify_floor in
/// magnitude are zeroed afterwards and final_loss is recomputed.
/// Throws InsufficientHistory.
SpreadingModel fit_spreading_matrix(const HotspotSeries& hotspots,
                                    std::size_t target_week,
                                    const std::vector<double>& w,
                                    const LearnerConfig& config,
                                    FitTrace* trace = nullptr);

/// Selects temporal weights for a target week, then fits the returned model
/// at them. The selection alternates up to weight_rounds times between
/// (a) fitting one surrogate matrix jointly over the trailing
/// weight_window weeks ending at the target, using the current w, and
/// (b) a per-coordinate grid sweep (coarse step, then a refinement pass at
/// weight_refine_step around the incumbent when that step is finer) scored
/// by the mean standardized hot-vs-cold forecast margin of the frozen
/// surrogate over the window's week pairs; candidates are sum-normalized
/// before scoring and ties keep the incumbent. The returned w is
/// sum-normalized (forecasts are invariant to rescaling w, so the sum-1
/// representative is canonical). Throws InsufficientHistory.
SpreadingModel search_temporal_weights(const HotspotSeries& hotspots,
                                       std::size_t target_week,
                                       const LearnerConfig& config,
                                       WeightSearchTrace* trace = nullptr);

}  // namespace epinet
