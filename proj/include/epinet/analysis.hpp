#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epinet/ingest.hpp"
#include "epinet/learner.hpp"
#include "epinet/matrix.hpp"

namespace epinet {

enum class NetworkKind { Learned, Mobility };
enum class NetworkLevel { Subzone, PlanningArea };

/// Weighted directed region-by-region flow graph. Weights are non-negative;
/// mobility networks are exactly symmetric.
struct FlowNetwork {
    Matrix weights;
    NetworkKind kind = NetworkKind::Learned;
    NetworkLevel level = NetworkLevel::Subzone;
    std::vector<std::string> labels;
};

/// Per-region metric vectors, each normalized by its own maximum (so every
/// vector with any positive entry has maximum exactly 1).
struct RegionMetrics {
    std::vector<double> transmission_in;
    std::vector<double> transmission_out;
    std::vector<double> mobility_ratio;
    std::vector<double> population;
    std::vector<std::string> labels;
};

/// Alignment report between mobility_ratio and the transmission vectors.
/// Correlations are nullopt when either input is constant; such vectors are
/// named in zero_variance instead of raising.
struct ComparisonReport {
    long top_k = 10;
    std::optional<double> pearson_in;
    std::optional<double> spearman_in;
    std::optional<double> pearson_out;
    std::optional<double> spearman_out;
    double jaccard_in = 0.0;
    double jaccard_out = 0.0;
    std::vector<std::string> zero_variance;
};

/// Divides each row by its L1 norm; all-zero rows stay zero.
Matrix row_normalize(const Matrix& P);

/// Global single-window structural similarity with population moments:
/// (2 mu_A mu_B + C1)(2 cov + C2) / ((mu_A^2 + mu_B^2 + C1)(var_A + var_B + C2)),
/// C1 = (0.01 L)^2, C2 = (0.03 L)^2, L = max entry over both inputs
/// (floored at 1e-12). Clamped to [0, 1]. Throws DimensionMismatch.
double ssim(const Matrix& A, const Matrix& B);

/// Sums the year's weekly matrices, each first scaled so its largest entry
/// is 1. Weeks whose largest entry is not positive contribute zeros and add
/// a warning. Aggregated entries are clamped to be non-negative (stray
/// small negative learned entries would otherwise violate the flow-network
/// invariant). Throws EmptyInput.
FlowNetwork aggregate_yearly(const std::vector<SpreadingModel>& models,
                             const std::vector<std::string>& labels,
                             std::vector<std::string>* warnings = nullptr);

/// Accumulates commuting tuples into a symmetric subzone network: each
/// tuple mapped to subzones (i, j) increments both (i,j) and (j,i), so a
/// home = work tuple adds 2 on the diagonal. Tuples with unmapped grids are
/// skipped and tallied. Throws EmptyAfterMapping when nothing maps.
FlowNetwork build_mobility_network(
    const std::vector<std::pair<std::string, std::string>>& commutes,
    const std::map<std::string, std::string>& grid_to_subzone,
    const SubzoneIndex& index, std::size_t* unmapped = nullptr);

/// Region metric vectors: transmission_in(k) = row sum of G_L,
/// transmission_out(k) = column sum of G_L, mobility_ratio(k) = row sum of
/// G_M times the population weight D(k) (raw population, or density when
/// density_mode). Diagonals of both networks are zeroed first; every output
/// vector is divided by its maximum. Throws DimensionMismatch.
RegionMetrics region_metrics(const FlowNetwork& G_L, const FlowNetwork& G_M,
                             const SubzoneIndex& index, bool density_mode = false);

/// Collapses a subzone network to planning areas: entry (A,B) sums net(i,j)
/// over subzones i in A, j in B. Output labels are the planning-area ids in
/// lexicographic order. Total weight is conserved exactly.
/// Throws MissingPlanningArea when a subzone lacks a planning area.
FlowNetwork rollup_planning_areas(const FlowNetwork& net, const SubzoneIndex& index);

/// Pearson and Spearman correlations (average ranks on ties) between
/// mobility_ratio and each transmission vector, plus Jaccard overlap of the
/// top-k regions (by value, ties toward the lower index; k clamped to N).
ComparisonReport compare_networks(const RegionMetrics& metrics, long top_k = 10);

}  // namespace epinet
