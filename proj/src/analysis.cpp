#include "epinet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "epinet/error.hpp"

namespace epinet {
namespace {

void check_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols())
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + " must be square, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

// Average ranks, 1-based; ties share the mean of their rank span.
std::vector<double> average_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size(), 0.0);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> pearson(const std::vector<double>& a, const std::vector<double>& b) {
    // Exactly constant inputs short-circuit: their computed variance can be
    // rounding noise rather than zero, which would yield a garbage ratio.
    auto constant = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (a.empty() || constant(a) || constant(b)) return std::nullopt;
    double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    if (va <= 0.0 || vb <= 0.0) return std::nullopt;
    return cov / std::sqrt(va * vb);
}

std::optional<double> spearman(const std::vector<double>& a, const std::vector<double>& b) {
    return pearson(average_ranks(a), average_ranks(b));
}

// Indices of the k largest values; ties resolved toward the lower index.
std::set<std::size_t> top_k_set(const std::vector<double>& v, std::size_t k) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return v[x] > v[y]; });
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < k && i < order.size(); ++i) out.insert(order[i]);
    return out;
}

double jaccard(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::size_t inter = 0;
    for (std::size_t x : a) inter += b.count(x);
    std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

void max_normalize(std::vector<double>& v) {
    double mx = 0.0;
    for (double x : v) mx = std::max(mx, x);
    if (mx > 0.0)
        for (double& x : v) x /= mx;
}

}  // namespace

Matrix row_normalize(const Matrix& P) {
    Matrix out = P;
    for (std::size_t i = 0; i < P.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < P.cols(); ++j) s += std::fabs(P(i, j));
        if (s > 0.0)
            for (std::size_t j = 0; j < P.cols(); ++j) out(i, j) = P(i, j) / s;
    }
    return out;
}

double ssim(const Matrix& A, const Matrix& B) {
    if (!A.same_shape(B))
        throw Error(ErrorKind::DimensionMismatch,
                    "ssim inputs are " + std::to_string(A.rows()) + "x" +
                        std::to_string(A.cols()) + " vs " + std::to_string(B.rows()) +
                        "x" + std::to_string(B.cols()));
    double n = static_cast<double>(A.rows() * A.cols());
    double muA = 0.0, muB = 0.0, L = 0.0;
    for (double v : A.data()) {
        muA += v;
        L = std::max(L, v);
    }
    for (double v : B.data()) {
        muB += v;
        L = std::max(L, v);
    }
    muA /= n;
    muB /= n;
    L = std::max(L, 1e-12);
    double varA = 0.0, varB = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < A.data().size(); ++i) {
        double da = A.data()[i] - muA, db = B.data()[i] - muB;
        varA += da * da;
        varB += db * db;
        cov += da * db;
    }
    varA /= n;
    varB /= n;
    cov /= n;
    double C1 = (0.01 * L) * (0.01 * L);
    double C2 = (0.03 * L) * (0.03 * L);
    double val = ((2.0 * muA * muB + C1) * (2.0 * cov + C2)) /
                 ((muA * muA + muB * muB + C1) * (varA + varB + C2));
    return std::clamp(val, 0.0, 1.0);
}

FlowNetwork aggregate_yearly(const std::vector<SpreadingModel>& models,
                             const std::vector<std::string>& labels,
                             std::vector<std::string>* warnings) {
    if (models.empty())
        throw Error(ErrorKind::EmptyInput, "no weekly models to aggregate");
    std::size_t n = models.front().P.rows();
    for (const auto& m : models) {
        check_square(m.P, "weekly matrix");
        if (m.P.rows() != n)
            throw Error(ErrorKind::DimensionMismatch,
                        "weekly matrices disagree on region count");
    }

    FlowNetwork net;
    net.kind = NetworkKind::Learned;
    net.level = NetworkLevel::Subzone;
    net.labels = labels;
    net.weights = Matrix(n, n, 0.0);
    for (const auto& m : models) {
        double mx = 0.0;
        for (double v : m.P.data()) mx = std::max(mx, v);
        if (mx <= 0.0) {
            if (warnings)
                warnings->push_back("week " + m.target_week +
                                    " has a zero matrix; contributes nothing");
            continue;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) net.weights(i, j) += m.P(i, j) / mx;
    }
    for (double& v : net.weights.data()) v = std::max(v, 0.0);
    return net;
}

FlowNetwork build_mobility_network(
    const std::vector<std::pair<std::string, std::string>>& commutes,
    const std::map<std::string, std::string>& grid_to_subzone,
    const SubzoneIndex& index, std::size_t* unmapped) {
    FlowNetwork net;
    net.kind = NetworkKind::Mobility;
    net.level = NetworkLevel::Subzone;
    net.labels = index.ids();
    net.weights = Matrix(index.size(), index.size(), 0.0);

    std::size_t skipped = 0, kept = 0;
    for (const auto& [home, work] : commutes) {
        auto hg = grid_to_subzone.find(home);
        auto wg = grid_to_subzone.find(work);
        std::optional<std::size_t> hi, wi;
        if (hg != grid_to_subzone.end()) hi = index.position(hg->second);
        if (wg != grid_to_subzone.end()) wi = index.position(wg->second);
        if (!hi || !wi) {
            ++skipped;
            continue;
        }
        net.weights(*hi, *wi) += 1.0;
        net.weights(*wi, *hi) += 1.0;
        ++kept;
    }
    if (unmapped) *unmapped = skipped;
    if (kept == 0)
        throw Error(ErrorKind::EmptyAfterMapping,
                    "no commuting tuple maps to subzones");
    return net;
}

RegionMetrics region_metrics(const FlowNetwork& G_L, const FlowNetwork& G_M,
                             const SubzoneIndex& index, bool density_mode) {
    check_square(G_L.weights, "learned network");
    check_square(G_M.weights, "mobility network");
    std::size_t n = G_L.weights.rows();
    if (G_M.weights.rows() != n || index.size() != n)
        throw Error(ErrorKind::DimensionMismatch,
                    "networks and index disagree on region count");

    RegionMetrics m;
    m.labels = G_L.labels;
    m.transmission_in.assign(n, 0.0);
    m.transmission_out.assign(n, 0.0);
    m.mobility_ratio.assign(n, 0.0);
    m.population.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;  // diagonals excluded
            m.transmission_in[k] += G_L.weights(k, j);
            m.transmission_out[k] += G_L.weights(j, k);
            m.mobility_ratio[k] += G_M.weights(k, j);
        }
        const auto& sz = index.subzones[k];
        double d = density_mode && sz.area_km2 > 0.0 ? sz.population / sz.area_km2
                                                     : sz.population;
        m.population[k] = d;
        m.mobility_ratio[k] *= d;
    }
    max_normalize(m.transmission_in);
    max_normalize(m.transmission_out);
    max_normalize(m.mobility_ratio);
    max_normalize(m.population);
    return m;
}

FlowNetwork rollup_planning_areas(const FlowNetwork& net, const SubzoneIndex& index) {
    check_square(net.weights, "network");
    if (net.weights.rows() != index.size())
        throw Error(ErrorKind::DimensionMismatch,
                    "network and index disagree on region count");
    std::set<std::string> areas;
    for (const auto& sz : index.subzones) {
        if (sz.planning_area_id.empty())
            throw Error(ErrorKind::MissingPlanningArea,
                        "subzone " + sz.subzone_id + " has no planning area");
        areas.insert(sz.planning_area_id);
    }
    FlowNetwork out;
    out.kind = net.kind;
    out.level = NetworkLevel::PlanningArea;
    out.labels.assign(areas.begin(), areas.end());  // lexicographic
    out.weights = Matrix(out.labels.size(), out.labels.size(), 0.0);

    std::vector<std::size_t> group(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        auto it = std::lower_bound(out.labels.begin(), out.labels.end(),
                                   index.subzones[i].planning_area_id);
        group[i] = static_cast<std::size_t>(it - out.labels.begin());
    }
    for (std::size_t i = 0; i < index.size(); ++i)
        for (std::size_t j = 0; j < index.size(); ++j)
            out.weights(group[i], group[j]) += net.weights(i, j);
    return out;
}

ComparisonReport compare_networks(const RegionMetrics& metrics, long top_k) {
    std::size_t n = metrics.mobility_ratio.size();
    if (metrics.transmission_in.size() != n || metrics.transmission_out.size() != n)
        throw Error(ErrorKind::DimensionMismatch, "metric vectors disagree on length");
    if (n == 0) throw Error(ErrorKind::EmptyInput, "empty metric vectors");

    ComparisonReport rep;
    rep.top_k = top_k;
    std::size_t k = static_cast<std::size_t>(std::max(1L, top_k));
    k = std::min(k, n);

    auto note_constant = [&](const std::vector<double>& v, const char* name) {
        bool constant = std::all_of(v.begin(), v.end(),
                                    [&](double x) { return x == v.front(); });
        if (constant) rep.zero_variance.push_back(name);
        return constant;
    };
    note_constant(metrics.mobility_ratio, "mobility_ratio");
    note_constant(metrics.transmission_in, "transmission_in");
    note_constant(metrics.transmission_out, "transmission_out");

    rep.pearson_in = pearson(metrics.mobility_ratio, metrics.transmission_in);
    rep.spearman_in = spearman(metrics.mobility_ratio, metrics.transmission_in);
    rep.pearson_out = pearson(metrics.mobility_ratio, metrics.transmission_out);
    rep.spearman_out = spearman(metrics.mobility_ratio, metrics.transmission_out);

    auto mob = top_k_set(metrics.mobility_ratio, k);
    rep.jaccard_in = jaccard(mob, top_k_set(metrics.transmission_in, k));
    rep.jaccard_out = jaccard(mob, top_k_set(metrics.transmission_out, k));
    return rep;
}

}  // namespace epinet
