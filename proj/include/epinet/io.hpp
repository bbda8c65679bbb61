#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "epinet/analysis.hpp"
#include "epinet/evaluation.hpp"
#include "epinet/forecaster.hpp"
#include "epinet/hotspot.hpp"
#include "epinet/ingest.hpp"
#include "epinet/learner.hpp"

namespace epinet::io {

/// Fixed-format double for CSV cells: "%.12f".
std::string format_double(double v);

/// Rounds to 12 decimal places (the precision JSON numbers carry).
double round12(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Weekly counts as CSV: header "subzone_id,<week...>", one row per subzone.
void write_counts_csv(const std::string& path, const WeeklyCaseCounts& counts);
WeeklyCaseCounts read_counts_csv(const std::string& path);

/// Binary 0/1 matrix with the same layout as the counts CSV.
void write_bits_csv(const std::string& path, const BitMatrix& bits,
                    const std::vector<std::string>& row_labels,
                    const std::vector<std::string>& col_labels);

/// Hotspot series directory: hotspots.csv + presence.csv + series.json.
void write_series(const std::string& dir, const HotspotSeries& series);
HotspotSeries read_series(const std::string& dir);

/// Dense real matrix with row/column labels (square, shared labels).
void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& labels);
Matrix read_matrix_csv(const std::string& path, std::vector<std::string>* labels);

/// Learned model: metadata JSON (w, loss, iterations, target week, matrix
/// file name) next to the matrix CSV.
void write_model(const std::string& dir, const SpreadingModel& model,
                 const std::vector<std::string>& labels);
SpreadingModel read_model(const std::string& json_path,
                          std::vector<std::string>* labels = nullptr);

/// All model-*.json files in a directory, ordered by target week label.
std::vector<SpreadingModel> read_models(const std::string& dir,
                                        std::vector<std::string>* labels = nullptr);

void write_forecast(const std::string& dir, const ForecastResult& forecast,
                    const std::vector<std::string>& subzone_ids);
ForecastResult read_forecast(const std::string& json_path,
                             std::vector<std::string>* subzone_ids = nullptr);

void write_weekly_scores_csv(const std::string& path,
                             const std::vector<WeeklyScore>& scores);
void write_summary_json(const std::string& path, const YearlySummary& summary);

/// Network as dense CSV plus an edge list (src_id, dst_id, weight; zero
/// entries omitted).
void write_network(const std::string& dir, const std::string& stem,
                   const FlowNetwork& net);
FlowNetwork read_network_csv(const std::string& path);

void write_region_metrics_csv(const std::string& path, const RegionMetrics& metrics);
RegionMetrics read_region_metrics_csv(const std::string& path);

void write_comparison_json(const std::string& path, const ComparisonReport& report);

/// Commuting tuples CSV with header home_grid,work_grid.
std::vector<std::pair<std::string, std::string>> read_commutes_csv(
    const std::string& path);

/// Grid-to-subzone mapping CSV with header grid_id,subzone_id.
std::map<std::string, std::string> read_grid_map_csv(const std::string& path);
void write_grid_map_csv(const std::string& path,
                        const std::map<std::string, std::string>& mapping);

}  // namespace epinet::io
