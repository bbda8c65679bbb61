#include "epinet/learner.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "epinet/error.hpp"
#include "epinet/rng.hpp"

namespace epinet {
namespace {

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void check_history(const std::vector<double>& w, const History& hist) {
    if (w.size() != hist.size())
        throw Error(ErrorKind::DimensionMismatch,
                    "w has " + std::to_string(w.size()) + " entries but history has " +
                        std::to_string(hist.size()) + " columns");
    for (std::size_t h = 1; h < hist.size(); ++h)
        if (hist[h].size() != hist[0].size())
            throw Error(ErrorKind::DimensionMismatch, "ragged history columns");
}

// Elastic-net loss over K (combined-history, target) column pairs sharing
// one P. K = 1 is the per-week fit; K > 1 the weight-search surrogate.
double multi_loss(const Matrix& P, const std::vector<std::vector<double>>& S,
                  const std::vector<std::vector<double>>& Y, double l1, double l2) {
    double acc = 0.0;
    for (std::size_t k = 0; k < S.size(); ++k) {
        auto est = matvec(P, S[k]);
        for (std::size_t i = 0; i < est.size(); ++i) {
            double r = est[i] - Y[k][i];
            acc += r * r;
        }
    }
    for (double v : P.data()) acc += l1 * v * v + l2 * std::fabs(v);
    return acc;
}

// Shared solver: seeded init, full-matrix subgradient step, step halving on
// loss increase (the step size persists across iterations), stop on the
// relative-change tolerance or the accepted-update cap.
Matrix core_fit(std::size_t n, const std::vector<std::vector<double>>& S,
                const std::vector<std::vector<double>>& Y, const LearnerConfig& config,
                double* final_loss, std::size_t* iterations, FitTrace* trace) {
    Rng rng(config.seed);
    Matrix P(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) P(i, j) = rng.uniform(0.0, 0.01);

    double cur = multi_loss(P, S, Y, config.lambda1, config.lambda2);
    if (trace) trace->losses.push_back(cur);
    double eta = config.learning_rate;
    std::size_t accepted = 0;
    Matrix G(n, n), cand(n, n);
    while (accepted < config.max_iters) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                G(i, j) = 2.0 * config.lambda1 * P(i, j) + config.lambda2 * sign(P(i, j));
        for (std::size_t k = 0; k < S.size(); ++k) {
            auto est = matvec(P, S[k]);
            for (std::size_t i = 0; i < n; ++i) {
                double r = 2.0 * (est[i] - Y[k][i]);
                for (std::size_t j = 0; j < n; ++j) G(i, j) += r * S[k][j];
            }
        }

        bool ok = false;
        double next = cur;
        while (eta >= 1e-15) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) cand(i, j) = P(i, j) - eta * G(i, j);
            next = multi_loss(cand, S, Y, config.lambda1, config.lambda2);
            if (next <= cur) {
                ok = true;
                break;
            }
            eta /= 2.0;
        }
        if (!ok) break;

        double rel = std::fabs(cur - next) / std::max(cur, 1e-12);
        std::swap(P, cand);
        cur = next;
        ++accepted;
        if (trace) trace->losses.push_back(cur);
        if (rel < config.tolerance) break;
    }
    if (final_loss) *final_loss = cur;
    if (iterations) *iterations = accepted;
    return P;
}

std::vector<double> bit_column(const BitMatrix& m, std::size_t t) { return m.col(t); }

// Training combination for target week tau: sum_h w_h * yhat^{tau-1-h}.
std::vector<double> train_s(const BitMatrix& y_hat, std::size_t tau,
                            const std::vector<double>& w) {
    std::vector<double> s(y_hat.rows(), 0.0);
    for (std::size_t h = 0; h < w.size(); ++h)
        for (std::size_t i = 0; i < y_hat.rows(); ++i)
            s[i] += w[h] * static_cast<double>(y_hat(i, tau - 1 - h));
    return s;
}

std::optional<std::vector<double>> sum_normalize(const std::vector<double>& w) {
    double s = 0.0;
    for (double v : w) s += v;
    if (s <= 0.0) return std::nullopt;
    std::vector<double> out(w.size());
    for (std::size_t h = 0; h < w.size(); ++h) out[h] = w[h] / s;
    return out;
}

// Standardized hot-vs-cold margin of the surrogate's forecast for the pair
// tau -> tau+1: x = tanh(P * s) with the forecast-shifted combination
// s = sum_h w_h yhat^{tau-h}, split by the observed hotspots of tau+1.
// nullopt when the observed week is all-hot or all-cold.
std::optional<double> pair_margin(const Matrix& P, const std::vector<double>& w,
                                  const BitMatrix& y, const BitMatrix& y_hat,
                                  std::size_t tau) {
    std::size_t n = y.rows();
    std::vector<double> s(n, 0.0);
    for (std::size_t h = 0; h < w.size(); ++h)
        for (std::size_t i = 0; i < n; ++i)
            s[i] += w[h] * static_cast<double>(y_hat(i, tau - h));
    auto x = matvec(P, s);
    for (double& v : x) v = std::tanh(v);

    double pos = 0.0, neg = 0.0, mean = 0.0;
    std::size_t npos = 0, nneg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mean += x[i];
        if (y(i, tau + 1)) {
            pos += x[i];
            ++npos;
        } else {
            neg += x[i];
            ++nneg;
        }
    }
    if (npos == 0 || nneg == 0) return std::nullopt;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    double sd = std::sqrt(var / static_cast<double>(n));
    if (sd < 1e-12) return 0.0;
    return (pos / static_cast<double>(npos) - neg / static_cast<double>(nneg)) / sd;
}

// {0, step, 2*step, ..} up to 1, with 1 appended when step does not divide it.
std::vector<double> grid_values(double step) {
    std::vector<double> vals;
    for (long k = 0;; ++k) {
        double v = static_cast<double>(k) * step;
        if (v > 1.0 + 1e-9) break;
        vals.push_back(std::min(v, 1.0));
    }
    if (vals.empty() || vals.back() < 1.0 - 1e-9) vals.push_back(1.0);
    return vals;
}

}  // namespace

std::vector<double> combine_history(const std::vector<double>& w, const History& hist) {
    check_history(w, hist);
    std::size_t n = hist.empty() ? 0 : hist[0].size();
    std::vector<double> s(n, 0.0);
    for (std::size_t h = 0; h < hist.size(); ++h)
        for (std::size_t i = 0; i < n; ++i) s[i] += w[h] * hist[h][i];
    return s;
}

std::vector<double> estimate(const Matrix& P, const std::vector<double>& w,
                             const History& hist) {
    return matvec(P, combine_history(w, hist));
}

double loss(const Matrix& P, const std::vector<double>& w, const History& hist,
            const std::vector<double>& y_target, double lambda1, double lambda2) {
    auto est = estimate(P, w, hist);
    if (est.size() != y_target.size())
        throw Error(ErrorKind::DimensionMismatch,
                    "target has " + std::to_string(y_target.size()) +
                        " entries, estimate has " + std::to_string(est.size()));
    double acc = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        double r = est[i] - y_target[i];
        acc += r * r;
    }
    for (double v : P.data()) acc += lambda1 * v * v + lambda2 * std::fabs(v);
    return acc;
}

std::vector<double> row_gradient(const std::vector<double>& P_row,
                                 const std::vector<double>& w, const History& hist,
                                 double y_i_target, double lambda1, double lambda2) {
    auto s = combine_history(w, hist);
    if (s.size() != P_row.size())
        throw Error(ErrorKind::DimensionMismatch,
                    "row has " + std::to_string(P_row.size()) + " entries, history has " +
                        std::to_string(s.size()));
    double dot = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) dot += P_row[j] * s[j];
    double r = 2.0 * (dot - y_i_target);
    std::vector<double> g(s.size());
    for (std::size_t j = 0; j < s.size(); ++j)
        g[j] = r * s[j] + 2.0 * lambda1 * P_row[j] + lambda2 * sign(P_row[j]);
    return g;
}

History training_history(const HotspotSeries& hotspots, std::size_t target_week,
                         std::size_t H) {
    if (target_week < H || target_week >= hotspots.y_hat.cols()) {
        std::string label = target_week < hotspots.week_labels.size()
                                ? hotspots.week_labels[target_week]
                                : "#" + std::to_string(target_week);
        throw Error(ErrorKind::InsufficientHistory,
                    "target week " + label + " lacks " + std::to_string(H) +
                        " preceding weeks in the series");
    }
    History hist;
    for (std::size_t h = 1; h <= H; ++h)
        hist.push_back(bit_column(hotspots.y_hat, target_week - h));
    return hist;
}

SpreadingModel fit_spreading_matrix(const HotspotSeries& hotspots,
                                    std::size_t target_week,
                                    const std::vector<double>& w,
                                    const LearnerConfig& config, FitTrace* trace) {
    auto hist = training_history(hotspots, target_week, config.H);
    std::size_t n = hotspots.y.rows();
    std::vector<std::vector<double>> S{combine_history(w, hist)};
    std::vector<std::vector<double>> Y{bit_column(hotspots.y, target_week)};

    SpreadingModel model;
    model.w = w;
    model.target_week = target_week < hotspots.week_labels.size()
                            ? hotspots.week_labels[target_week]
                            : "";
    model.P = core_fit(n, S, Y, config, &model.final_loss, &model.iterations_used, trace);

    bool floored = false;
    for (double& v : model.P.data()) {
        if (v != 0.0 && std::fabs(v) < config.sparsify_floor) {
            v = 0.0;
            floored = true;
        }
    }
    if (floored)
        model.final_loss = multi_loss(model.P, S, Y, config.lambda1, config.lambda2);
    return model;
}

SpreadingModel search_temporal_weights(const HotspotSeries& hotspots,
                                       std::size_t target_week,
                                       const LearnerConfig& config,
                                       WeightSearchTrace* trace) {
    const std::size_t H = config.H;
    const std::size_t t = target_week;
    training_history(hotspots, t, H);  // validates history depth

    std::size_t lo_t = t + 1 > config.weight_window ? t + 1 - config.weight_window : 0;
    lo_t = std::max(lo_t, H);
    std::vector<std::size_t> taus;
    for (std::size_t tau = lo_t; tau <= t; ++tau) taus.push_back(tau);
    std::vector<std::size_t> pairs(taus.begin(), taus.end() - 1);

    std::vector<double> w(H, 1.0 / static_cast<double>(H));
    const std::size_t n = hotspots.y.rows();

    for (std::size_t round = 0; round < config.weight_rounds; ++round) {
        std::vector<std::vector<double>> S, Y;
        for (std::size_t tau : taus) {
            S.push_back(train_s(hotspots.y_hat, tau, w));
            Y.push_back(bit_column(hotspots.y, tau));
        }
        Matrix P = core_fit(n, S, Y, config, nullptr, nullptr, nullptr);

        auto score = [&](const std::vector<double>& wc) -> std::optional<double> {
            auto wn = sum_normalize(wc);
            if (!wn) return std::nullopt;
            double acc = 0.0;
            std::size_t count = 0;
            for (std::size_t tau : pairs) {
                auto m = pair_margin(P, *wn, hotspots.y, hotspots.y_hat, tau);
                if (m) {
                    acc += *m;
                    ++count;
                }
            }
            if (count == 0) return std::nullopt;
            return acc / static_cast<double>(count);
        };

        std::vector<double> wbest = w;
        std::optional<double> best = score(w);
        auto consider = [&](std::vector<double> wc) {
            if (trace) trace->evaluated.push_back(wc);
            auto sc = score(wc);
            if (sc && (!best || *sc > *best)) {
                best = sc;
                wbest = std::move(wc);
            }
        };

        for (std::size_t h = 0; h < H; ++h) {
            for (double c : grid_values(config.weight_grid_step)) {
                auto wc = wbest;
                wc[h] = c;
                consider(std::move(wc));
            }
        }
        if (config.weight_refine_step < config.weight_grid_step) {
            const double fine = config.weight_refine_step;
            for (std::size_t h = 0; h < H; ++h) {
                double lo = std::max(0.0, wbest[h] - config.weight_grid_step);
                double hi = std::min(1.0, wbest[h] + config.weight_grid_step);
                long tick0 = static_cast<long>(std::ceil(lo / fine - 1e-9));
                long tick1 = static_cast<long>(std::floor(hi / fine + 1e-9));
                for (long tick = tick0; tick <= tick1; ++tick) {
                    auto wc = wbest;
                    wc[h] = static_cast<double>(tick) * fine;
                    consider(std::move(wc));
                }
            }
        }

        auto wn = sum_normalize(wbest);
        if (!wn) break;
        double delta = 0.0;
        for (std::size_t h = 0; h < H; ++h)
            delta = std::max(delta, std::fabs((*wn)[h] - w[h]));
        w = *wn;
        if (delta < 1e-9) break;
    }

    return fit_spreading_matrix(hotspots, t, w, config);
}

}  // namespace epinet
