#include "epinet/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "epinet/csv.hpp"
#include "epinet/error.hpp"
#include "json.hpp"

namespace epinet::io {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
    return out;
}

json parse_json_file(const std::string& path) {
    auto in = open_in(path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
}

long parse_long_cell(const std::string& cell, const std::string& path) {
    try {
        std::size_t pos = 0;
        long v = std::stol(csv::trim(cell), &pos);
        if (pos != csv::trim(cell).size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, path + ": bad integer cell '" + cell + "'");
    }
}

double parse_double_cell(const std::string& cell, const std::string& path) {
    try {
        std::size_t pos = 0;
        double v = std::stod(csv::trim(cell), &pos);
        if (pos != csv::trim(cell).size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, path + ": bad numeric cell '" + cell + "'");
    }
}

// Shared layout of every labeled-grid CSV: header "<corner>,<col...>",
// then one labeled row per line.
void write_grid(std::ostream& out, const std::string& corner,
                const std::vector<std::string>& col_labels,
                const std::vector<std::string>& row_labels,
                const std::function<std::string(std::size_t, std::size_t)>& cell) {
    std::vector<std::string> header{corner};
    header.insert(header.end(), col_labels.begin(), col_labels.end());
    out << csv::join(header) << "\n";
    for (std::size_t i = 0; i < row_labels.size(); ++i) {
        std::vector<std::string> row{row_labels[i]};
        for (std::size_t j = 0; j < col_labels.size(); ++j) row.push_back(cell(i, j));
        out << csv::join(row) << "\n";
    }
}

struct GridFile {
    std::vector<std::string> col_labels;
    std::vector<std::string> row_labels;
    std::vector<std::vector<std::string>> cells;
};

GridFile read_grid(const std::string& path) {
    auto in = open_in(path);
    auto rows = csv::read_all(in);
    if (rows.empty() || rows.front().size() < 2)
        throw Error(ErrorKind::ParseError, path + ": missing labeled header row");
    GridFile grid;
    grid.col_labels.assign(rows.front().begin() + 1, rows.front().end());
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size())
            throw Error(ErrorKind::ParseError,
                        path + ": row " + std::to_string(r + 1) + " has " +
                            std::to_string(rows[r].size()) + " cells, expected " +
                            std::to_string(rows.front().size()));
        grid.row_labels.push_back(rows[r].front());
        grid.cells.emplace_back(rows[r].begin() + 1, rows[r].end());
    }
    return grid;
}

BitMatrix read_bits_csv(const std::string& path, std::vector<std::string>* rows,
                        std::vector<std::string>* cols) {
    auto grid = read_grid(path);
    BitMatrix m(grid.row_labels.size(), grid.col_labels.size(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            long v = parse_long_cell(grid.cells[i][j], path);
            if (v != 0 && v != 1)
                throw Error(ErrorKind::ParseError, path + ": cell not 0/1");
            m(i, j) = static_cast<std::uint8_t>(v);
        }
    if (rows) *rows = grid.row_labels;
    if (cols) *cols = grid.col_labels;
    return m;
}

std::string model_json_name(const std::string& week) { return "model-" + week + ".json"; }
std::string model_matrix_name(const std::string& week) { return "matrix-" + week + ".csv"; }

json optional_number(const std::optional<double>& v) {
    if (!v) return nullptr;
    return round12(*v);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

double round12(double v) {
    if (!std::isfinite(v)) return v;
    double r = std::round(v * 1e12) / 1e12;
    if (r == 0.0) r = 0.0;  // normalize -0
    return r;
}

std::string read_text_file(const std::string& path) {
    auto in = open_in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    auto out = open_out(path);
    out << content;
}

void write_counts_csv(const std::string& path, const WeeklyCaseCounts& counts) {
    auto out = open_out(path);
    write_grid(out, "subzone_id", counts.week_labels, counts.subzone_ids,
               [&](std::size_t i, std::size_t j) {
                   return std::to_string(counts.counts(i, j));
               });
}

WeeklyCaseCounts read_counts_csv(const std::string& path) {
    auto grid = read_grid(path);
    WeeklyCaseCounts counts;
    counts.week_labels = grid.col_labels;
    counts.subzone_ids = grid.row_labels;
    counts.counts = Mat<long>(grid.row_labels.size(), grid.col_labels.size(), 0);
    for (std::size_t i = 0; i < counts.counts.rows(); ++i)
        for (std::size_t j = 0; j < counts.counts.cols(); ++j) {
            long v = parse_long_cell(grid.cells[i][j], path);
            if (v < 0)
                throw Error(ErrorKind::ParseError, path + ": negative count");
            counts.counts(i, j) = v;
        }
    return counts;
}

void write_bits_csv(const std::string& path, const BitMatrix& bits,
                    const std::vector<std::string>& row_labels,
                    const std::vector<std::string>& col_labels) {
    auto out = open_out(path);
    write_grid(out, "subzone_id", col_labels, row_labels,
               [&](std::size_t i, std::size_t j) {
                   return std::to_string(static_cast<int>(bits(i, j)));
               });
}

void write_series(const std::string& dir, const HotspotSeries& series) {
    write_bits_csv(dir + "/hotspots.csv", series.y, series.subzone_ids,
                   series.week_labels);
    write_bits_csv(dir + "/presence.csv", series.y_hat, series.subzone_ids,
                   series.week_labels);
    json meta;
    meta["hotspot_threshold"] = series.c;
    meta["weeks"] = series.week_labels;
    meta["subzones"] = series.subzone_ids;
    write_text_file(dir + "/series.json", meta.dump(2) + "\n");
}

HotspotSeries read_series(const std::string& dir) {
    HotspotSeries series;
    std::vector<std::string> rows2, cols2;
    series.y = read_bits_csv(dir + "/hotspots.csv", &series.subzone_ids,
                             &series.week_labels);
    series.y_hat = read_bits_csv(dir + "/presence.csv", &rows2, &cols2);
    if (rows2 != series.subzone_ids || cols2 != series.week_labels)
        throw Error(ErrorKind::ParseError,
                    dir + ": hotspots.csv and presence.csv labels disagree");
    auto meta = parse_json_file(dir + "/series.json");
    series.c = meta.value("hotspot_threshold", 3L);
    for (std::size_t i = 0; i < series.y.data().size(); ++i)
        if (series.y.data()[i] && !series.y_hat.data()[i])
            throw Error(ErrorKind::ParseError,
                        dir + ": hotspot without presence in stored series");
    return series;
}

void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& labels) {
    auto out = open_out(path);
    write_grid(out, "id", labels, labels, [&](std::size_t i, std::size_t j) {
        return format_double(m(i, j));
    });
}

Matrix read_matrix_csv(const std::string& path, std::vector<std::string>* labels) {
    auto grid = read_grid(path);
    if (grid.row_labels != grid.col_labels)
        throw Error(ErrorKind::ParseError, path + ": row/column labels differ");
    Matrix m(grid.row_labels.size(), grid.col_labels.size(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = parse_double_cell(grid.cells[i][j], path);
    if (labels) *labels = grid.row_labels;
    return m;
}

void write_model(const std::string& dir, const SpreadingModel& model,
                 const std::vector<std::string>& labels) {
    write_matrix_csv(dir + "/" + model_matrix_name(model.target_week), model.P, labels);
    json doc;
    doc["target_week"] = model.target_week;
    json w = json::array();
    for (double v : model.w) w.push_back(round12(v));
    doc["w"] = w;
    doc["final_loss"] = round12(model.final_loss);
    doc["iterations_used"] = model.iterations_used;
    doc["matrix_file"] = model_matrix_name(model.target_week);
    write_text_file(dir + "/" + model_json_name(model.target_week), doc.dump(2) + "\n");
}

SpreadingModel read_model(const std::string& json_path,
                          std::vector<std::string>* labels) {
    auto doc = parse_json_file(json_path);
    SpreadingModel model;
    model.target_week = doc.at("target_week").get<std::string>();
    model.w = doc.at("w").get<std::vector<double>>();
    model.final_loss = doc.at("final_loss").get<double>();
    model.iterations_used = doc.at("iterations_used").get<std::size_t>();
    fs::path matrix = fs::path(json_path).parent_path() /
                      doc.at("matrix_file").get<std::string>();
    model.P = read_matrix_csv(matrix.string(), labels);
    return model;
}

std::vector<SpreadingModel> read_models(const std::string& dir,
                                        std::vector<std::string>* labels) {
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::string name = entry.path().filename().string();
        if (name.rfind("model-", 0) == 0 && name.size() > 11 &&
            name.substr(name.size() - 5) == ".json")
            paths.push_back(entry.path().string());
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty())
        throw Error(ErrorKind::EmptyInput, "no model-*.json files in " + dir);
    std::vector<SpreadingModel> models;
    for (const auto& p : paths) models.push_back(read_model(p, labels));
    std::sort(models.begin(), models.end(),
              [](const SpreadingModel& a, const SpreadingModel& b) {
                  return a.target_week < b.target_week;
              });
    return models;
}

void write_forecast(const std::string& dir, const ForecastResult& forecast,
                    const std::vector<std::string>& subzone_ids) {
    json doc;
    doc["target_week"] = forecast.target_week;
    doc["threshold"] = round12(forecast.threshold_value);
    json list = json::array();
    for (std::size_t i = 0; i < forecast.scores.size(); ++i) {
        json item;
        item["id"] = subzone_ids[i];
        item["score"] = round12(forecast.scores[i]);
        item["prediction"] = static_cast<int>(forecast.predictions[i]);
        list.push_back(item);
    }
    doc["subzones"] = list;
    write_text_file(dir + "/forecast-" + forecast.target_week + ".json",
                    doc.dump(2) + "\n");

    auto out = open_out(dir + "/forecast-" + forecast.target_week + ".csv");
    out << "subzone_id,score,prediction\n";
    for (std::size_t i = 0; i < forecast.scores.size(); ++i)
        out << csv::join({subzone_ids[i], format_double(forecast.scores[i]),
                          std::to_string(static_cast<int>(forecast.predictions[i]))})
            << "\n";
}

ForecastResult read_forecast(const std::string& json_path,
                             std::vector<std::string>* subzone_ids) {
    auto doc = parse_json_file(json_path);
    ForecastResult f;
    f.target_week = doc.at("target_week").get<std::string>();
    f.threshold_value = doc.at("threshold").get<double>();
    if (subzone_ids) subzone_ids->clear();
    for (const auto& item : doc.at("subzones")) {
        if (subzone_ids) subzone_ids->push_back(item.at("id").get<std::string>());
        f.scores.push_back(item.at("score").get<double>());
        f.predictions.push_back(
            static_cast<std::uint8_t>(item.at("prediction").get<int>()));
    }
    return f;
}

void write_weekly_scores_csv(const std::string& path,
                             const std::vector<WeeklyScore>& scores) {
    auto out = open_out(path);
    out << "week,tp,fp,tn,fn,accuracy,precision,recall,f1\n";
    for (const auto& s : scores)
        out << csv::join({s.week, std::to_string(s.counts.tp),
                          std::to_string(s.counts.fp), std::to_string(s.counts.tn),
                          std::to_string(s.counts.fn), format_double(s.accuracy),
                          format_double(s.precision), format_double(s.recall),
                          format_double(s.f1)})
            << "\n";
}

void write_summary_json(const std::string& path, const YearlySummary& summary) {
    json doc;
    doc["year"] = summary.year;
    doc["weeks_scored"] = summary.weeks_scored;
    doc["macro"] = {{"accuracy_mean", round12(summary.accuracy_mean)},
                    {"accuracy_std", round12(summary.accuracy_std)},
                    {"precision_mean", round12(summary.precision_mean)},
                    {"recall_mean", round12(summary.recall_mean)},
                    {"f1_mean", round12(summary.f1_mean)}};
    doc["micro"] = {{"accuracy", round12(summary.micro_accuracy)},
                    {"precision", round12(summary.micro_precision)},
                    {"recall", round12(summary.micro_recall)},
                    {"f1", round12(summary.micro_f1)}};
    doc["pooled"] = {{"tp", summary.pooled.tp},
                     {"fp", summary.pooled.fp},
                     {"tn", summary.pooled.tn},
                     {"fn", summary.pooled.fn}};
    json ws = json::array();
    for (std::size_t h = 0; h < summary.weight_stats.size(); ++h) {
        const auto& s = summary.weight_stats[h];
        ws.push_back({{"h", h + 1},
                      {"min", round12(s.min)},
                      {"median", round12(s.median)},
                      {"mean", round12(s.mean)},
                      {"max", round12(s.max)}});
    }
    doc["weight_stats"] = ws;
    write_text_file(path, doc.dump(2) + "\n");
}

void write_network(const std::string& dir, const std::string& stem,
                   const FlowNetwork& net) {
    write_matrix_csv(dir + "/" + stem + ".csv", net.weights, net.labels);
    auto out = open_out(dir + "/" + stem + "-edges.csv");
    out << "src_id,dst_id,weight\n";
    for (std::size_t i = 0; i < net.weights.rows(); ++i)
        for (std::size_t j = 0; j < net.weights.cols(); ++j)
            if (net.weights(i, j) != 0.0)
                out << csv::join({net.labels[i], net.labels[j],
                                  format_double(net.weights(i, j))})
                    << "\n";
}

FlowNetwork read_network_csv(const std::string& path) {
    FlowNetwork net;
    net.weights = read_matrix_csv(path, &net.labels);
    return net;
}

void write_region_metrics_csv(const std::string& path, const RegionMetrics& metrics) {
    auto out = open_out(path);
    out << "region_id,transmission_in,transmission_out,mobility_ratio,population\n";
    for (std::size_t k = 0; k < metrics.labels.size(); ++k)
        out << csv::join({metrics.labels[k], format_double(metrics.transmission_in[k]),
                          format_double(metrics.transmission_out[k]),
                          format_double(metrics.mobility_ratio[k]),
                          format_double(metrics.population[k])})
            << "\n";
}

RegionMetrics read_region_metrics_csv(const std::string& path) {
    auto in = open_in(path);
    auto rows = csv::read_all(in);
    if (rows.empty() || rows.front() !=
                            std::vector<std::string>{"region_id", "transmission_in",
                                                     "transmission_out",
                                                     "mobility_ratio", "population"})
        throw Error(ErrorKind::ParseError, path + ": unexpected metrics header");
    RegionMetrics m;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 5)
            throw Error(ErrorKind::ParseError, path + ": metrics row needs 5 cells");
        m.labels.push_back(rows[r][0]);
        m.transmission_in.push_back(parse_double_cell(rows[r][1], path));
        m.transmission_out.push_back(parse_double_cell(rows[r][2], path));
        m.mobility_ratio.push_back(parse_double_cell(rows[r][3], path));
        m.population.push_back(parse_double_cell(rows[r][4], path));
    }
    return m;
}

void write_comparison_json(const std::string& path, const ComparisonReport& report) {
    json doc;
    doc["top_k"] = report.top_k;
    doc["pearson_in"] = optional_number(report.pearson_in);
    doc["spearman_in"] = optional_number(report.spearman_in);
    doc["pearson_out"] = optional_number(report.pearson_out);
    doc["spearman_out"] = optional_number(report.spearman_out);
    doc["jaccard_in"] = round12(report.jaccard_in);
    doc["jaccard_out"] = round12(report.jaccard_out);
    doc["zero_variance"] = report.zero_variance;
    write_text_file(path, doc.dump(2) + "\n");
}

std::vector<std::pair<std::string, std::string>> read_commutes_csv(
    const std::string& path) {
    auto in = open_in(path);
    auto rows = csv::read_all(in);
    if (rows.empty() || rows.front().size() < 2)
        throw Error(ErrorKind::ParseError, path + ": missing commutes header");
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() < 2)
            throw Error(ErrorKind::ParseError,
                        path + ": commute row " + std::to_string(r + 1) + " too short");
        out.emplace_back(csv::trim(rows[r][0]), csv::trim(rows[r][1]));
    }
    return out;
}

std::map<std::string, std::string> read_grid_map_csv(const std::string& path) {
    auto in = open_in(path);
    auto rows = csv::read_all(in);
    if (rows.empty() || rows.front().size() < 2)
        throw Error(ErrorKind::ParseError, path + ": missing grid map header");
    std::map<std::string, std::string> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() < 2)
            throw Error(ErrorKind::ParseError,
                        path + ": grid map row " + std::to_string(r + 1) + " too short");
        out[csv::trim(rows[r][0])] = csv::trim(rows[r][1]);
    }
    return out;
}

void write_grid_map_csv(const std::string& path,
                        const std::map<std::string, std::string>& mapping) {
    auto out = open_out(path);
    out << "grid_id,subzone_id\n";
    for (const auto& [grid, subzone] : mapping)
        out << csv::join({grid, subzone}) << "\n";
}

}  // namespace epinet::io
