// epinet: file-based pipeline over weekly case snapshots. Subcommands
// compose through their output directories; every output directory gets a
// manifest.json recording the command, resolved settings, input digests,
// and seed, so reruns are reproducible and diffable.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "epinet/analysis.hpp"
#include "epinet/error.hpp"
#include "epinet/evaluation.hpp"
#include "epinet/forecaster.hpp"
#include "epinet/hotspot.hpp"
#include "epinet/ingest.hpp"
#include "epinet/io.hpp"
#include "epinet/learner.hpp"
#include "epinet/manifest.hpp"
#include "epinet/pipeline.hpp"
#include "epinet/synth.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace epinet;

// Relative input paths resolve against EPINET_ROOT when it is set.
std::string resolve_input(const std::string& path) {
    if (path.empty() || fs::path(path).is_absolute()) return path;
    const char* root = std::getenv("EPINET_ROOT");
    if (!root || !*root) return path;
    return (fs::path(root) / path).string();
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create directory " + dir);
}

// "12" -> [12, 12]; "5:20" -> [5, 20].
std::pair<std::size_t, std::size_t> parse_week_range(const std::string& text) {
    auto bad = [&]() {
        return Error(ErrorKind::ParseError,
                     "bad week range '" + text + "' (expected T or A:B)");
    };
    try {
        auto colon = text.find(':');
        if (colon == std::string::npos) {
            std::size_t v = std::stoul(text);
            return {v, v};
        }
        std::size_t a = std::stoul(text.substr(0, colon));
        std::size_t b = std::stoul(text.substr(colon + 1));
        if (a > b) throw bad();
        return {a, b};
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw bad();
    }
}

CLI::Validator hotspot_threshold_check() {
    return CLI::Validator(
        [](std::string& s) -> std::string {
            long v = 0;
            try {
                std::size_t pos = 0;
                v = std::stol(s, &pos);
                if (pos != s.size()) throw std::invalid_argument(s);
            } catch (const std::exception&) {
                return "InvalidThreshold: '" + s + "' is not an integer";
            }
            if (v < 1) return "InvalidThreshold: hotspot threshold must be >= 1";
            return {};
        },
        "INT >= 1");
}

SubzoneIndex load_index_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
    return load_subzone_index(in);
}

json learner_config_json(const LearnerConfig& c) {
    return {{"lookback", c.H},
            {"lambda1", c.lambda1},
            {"lambda2", c.lambda2},
            {"learning_rate", c.learning_rate},
            {"max_iters", c.max_iters},
            {"tolerance", c.tolerance},
            {"weight_grid_step", c.weight_grid_step},
            {"weight_refine_step", c.weight_refine_step},
            {"weight_window", c.weight_window},
            {"weight_rounds", c.weight_rounds},
            {"sparsify_floor", c.sparsify_floor}};
}

// Series inputs digested for a manifest.
void add_series_inputs(RunManifest& m, const std::string& dir) {
    for (const char* name : {"hotspots.csv", "presence.csv", "series.json"})
        m.inputs.emplace_back(dir + "/" + std::string(name),
                              digest_file(dir + "/" + name));
}

std::size_t week_index(const HotspotSeries& series, const std::string& label) {
    for (std::size_t t = 0; t < series.week_labels.size(); ++t)
        if (series.week_labels[t] == label) return t;
    throw Error(ErrorKind::EmptyInput,
                "week " + label + " is not in the series");
}

void register_ingest(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "ingest", "Parse weekly snapshot CSVs into a subzone-by-week count matrix");
    sub->set_config("--config");
    auto snapshots = std::make_shared<std::vector<std::string>>();
    auto subzones = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>("out");
    auto week_start = std::make_shared<int>(0);
    auto drop_low_density = std::make_shared<bool>(false);
    sub->add_option("--snapshots", *snapshots, "Snapshot CSV files (YYMMDD-named)")
        ->required()
        ->expected(-1);
    sub->add_option("--subzones", *subzones, "Subzone boundary GeoJSON")->required();
    sub->add_option("--week-start", *week_start, "First day of the week (0=Sun..6=Sat)")
        ->check(CLI::Range(0, 6));
    sub->add_flag("--drop-low-density", *drop_low_density,
                  "Drop subzones flagged below 10 persons/km^2");
    sub->add_option("--out", *out_dir, "Output directory");

    sub->callback([=]() {
        ensure_out_dir(*out_dir);
        RunManifest manifest;
        manifest.command = "ingest";

        std::string subzone_path = resolve_input(*subzones);
        SubzoneIndex index = load_index_file(subzone_path);
        manifest.inputs.emplace_back(subzone_path, digest_file(subzone_path));
        if (*drop_low_density) {
            std::erase_if(index.subzones,
                          [](const Subzone& s) { return s.low_density_flag; });
        }

        std::vector<LocalityRecord> records;
        std::size_t skipped = 0;
        for (const auto& snapshot : *snapshots) {
            std::string path = resolve_input(snapshot);
            std::ifstream in(path, std::ios::binary);
            if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
            ParseResult parsed =
                parse_snapshot(in, fs::path(path).filename().string());
            skipped += parsed.skipped;
            records.insert(records.end(), parsed.records.begin(),
                           parsed.records.end());
            manifest.inputs.emplace_back(path, digest_file(path));
        }

        WeekRule rule{*week_start};
        std::size_t unmapped = 0;
        WeeklyCaseCounts counts = build_weekly_counts(records, index, rule, &unmapped);
        for (const auto& w : counts.warnings) std::cerr << "warning: " << w << "\n";

        io::write_counts_csv(*out_dir + "/counts.csv", counts);
        manifest.config = {{"week_start", *week_start},
                           {"drop_low_density", *drop_low_density},
                           {"subzones", counts.subzone_ids.size()},
                           {"weeks", counts.week_labels.size()},
                           {"rows_skipped", skipped},
                           {"records_unmapped", unmapped}};
        write_manifest(*out_dir, manifest);
        std::cout << "wrote " << *out_dir << "/counts.csv ("
                  << counts.subzone_ids.size() << " subzones, "
                  << counts.week_labels.size() << " weeks)\n";
    });
}

void register_binarize(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "binarize", "Threshold weekly counts into hotspot and presence states");
    sub->set_config("--config");
    auto counts_path = std::make_shared<std::string>();
    auto threshold = std::make_shared<long>(3);
    auto out_dir = std::make_shared<std::string>("out");
    sub->add_option("--counts", *counts_path, "counts.csv from ingest or synth")
        ->required();
    sub->add_option("--hotspot-threshold", *threshold,
                    "Localities needed for hotspot status")
        ->check(hotspot_threshold_check());
    sub->add_option("--out", *out_dir, "Output directory");

    sub->callback([=]() {
        ensure_out_dir(*out_dir);
        std::string path = resolve_input(*counts_path);
        WeeklyCaseCounts counts = io::read_counts_csv(path);
        HotspotSeries series = binarize(counts, *threshold);
        io::write_series(*out_dir, series);

        RunManifest manifest;
        manifest.command = "binarize";
        manifest.config = {{"hotspot_threshold", *threshold}};
        manifest.inputs.emplace_back(path, digest_file(path));
        write_manifest(*out_dir, manifest);
        std::cout << "wrote hotspot series to " << *out_dir << "\n";
    });
}

void register_learn(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "learn", "Learn weekly spreading matrices and temporal weights");
    sub->set_config("--config");
    auto series_dir = std::make_shared<std::string>();
    auto weeks = std::make_shared<std::string>();
    auto fixed_weights = std::make_shared<std::vector<double>>();
    auto config = std::make_shared<LearnerConfig>();
    auto out_dir = std::make_shared<std::string>("out");
    sub->add_option("--series", *series_dir, "Series directory from binarize")
        ->required();
    sub->add_option("--weeks", *weeks,
                    "Week index or range A:B (default: all with history)");
    sub->add_option("--lookback", config->H, "History weeks H")->check(CLI::Range(1, 64));
    sub->add_option("--lambda1", config->lambda1, "L2 coefficient")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--lambda2", config->lambda2, "L1 coefficient")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--learning-rate", config->learning_rate, "Initial step size")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", config->max_iters, "Iteration cap");
    sub->add_option("--tolerance", config->tolerance, "Relative loss-change stop");
    sub->add_option("--weight-grid-step", config->weight_grid_step,
                    "Coarse sweep increment")
        ->check(CLI::Range(1e-6, 1.0));
    sub->add_option("--weight-refine-step", config->weight_refine_step,
                    "Refinement increment");
    sub->add_option("--weight-window", config->weight_window,
                    "Trailing weeks scored by the weight search");
    sub->add_option("--weight-rounds", config->weight_rounds,
                    "Weight search rounds");
    sub->add_option("--sparsify-floor", config->sparsify_floor,
                    "Zero matrix entries below this magnitude");
    sub->add_option("--seed", config->seed, "Base PRNG seed");
    sub->add_option("--fixed-weights", *fixed_weights,
                    "Skip the weight search and use these weights")
        ->expected(-1);
    sub->add_option("--out", *out_dir, "Output directory");

    sub->callback([=]() {
        ensure_out_dir(*out_dir);
        std::string dir = resolve_input(*series_dir);
        HotspotSeries series = io::read_series(dir);

        std::size_t t_begin = config->H, t_end = series.y.cols() - 1;
        if (!weeks->empty()) std::tie(t_begin, t_end) = parse_week_range(*weeks);
        bool search = fixed_weights->empty();
        if (!search && fixed_weights->size() != config->H)
            throw Error(ErrorKind::DimensionMismatch,
                        "--fixed-weights needs exactly " + std::to_string(config->H) +
                            " values");

        auto models =
            learn_weeks(series, t_begin, t_end, *config, search, *fixed_weights);
        std::ostringstream weights_csv;
        weights_csv << "week";
        for (std::size_t h = 1; h <= config->H; ++h) weights_csv << ",w" << h;
        weights_csv << ",final_loss,iterations\n";
        for (const auto& model : models) {
            io::write_model(*out_dir, model, series.subzone_ids);
            weights_csv << model.target_week;
            for (double w : model.w) weights_csv << "," << io::format_double(w);
            weights_csv << "," << io::format_double(model.final_loss) << ","
                        << model.iterations_used << "\n";
        }
        io::write_text_file(*out_dir + "/weights.csv", weights_csv.str());

        RunManifest manifest;
        manifest.command = "learn";
        manifest.config = learner_config_json(*config);
        manifest.config["weeks_begin"] = t_begin;
        manifest.config["weeks_end"] = t_end;
        manifest.config["search_weights"] = search;
        manifest.seed = config->seed;
        add_series_inputs(manifest, dir);
        write_manifest(*out_dir, manifest);
        std::cout << "wrote " << models.size() << " weekly models to " << *out_dir
                  << "\n";
    });
}

void register_forecast(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "forecast", "Forecast next-week hotspots from a learned model");
    sub->set_config("--config");
    auto series_dir = std::make_shared<std::string>();
    auto model_path = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>("out");
    sub->add_option("--series", *series_dir, "Series directory")->required();
    sub->add_option("--model", *model_path, "model-<week>.json from learn")
        ->required();
    sub->add_option("--out", *out_dir, "Output directory");

    sub->callback([=]() {
        ensure_out_dir(*out_dir);
        std::string dir = resolve_input(*series_dir);
        std::string mpath = resolve_input(*model_path);
        HotspotSeries series = io::read_series(dir);
        std::vector<std::string> labels;
        SpreadingModel model = io::read_model(mpath, &labels);
        if (labels != series.subzone_ids)
            throw Error(ErrorKind::DimensionMismatch,
                        "model and series subzones disagree for week " +
                            model.target_week);

        std::size_t t = week_index(series, model.target_week);
        ForecastResult forecast = forecast_next_week(model, series, t);
        io::write_forecast(*out_dir, forecast, series.subzone_ids);

        RunManifest manifest;
        manifest.command = "forecast";
        manifest.config = {{"model_week", model.target_week},
                           {"target_week", forecast.target_week}};
        add_series_inputs(manifest, dir);
        manifest.inputs.emplace_back(mpath, digest_file(mpath));
        write_manifest(*out_dir, manifest);
        std::cout << "wrote forecast for " << forecast.target_week << " to "
                  << *out_dir << "\n";
    });
}

void register_evaluate(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "evaluate", "Score forecasts against observed hotspots");
    sub->set_config("--config");
    auto series_dir = std::make_shared<std::string>();
    auto forecasts_dir = std::make_shared<std::string>();
    auto models_dir = std::make_shared<std::string>();
    auto year = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>("out");
    sub->add_option("--series", *series_dir, "Series directory")->required();
    sub->add_option("--forecasts", *forecasts_dir,
                    "Directory holding forecast-*.json files")
        ->required();
    sub->add_option("--models", *models_dir,
                    "Optional models directory for weight statistics");
    sub->add_option("--year", *year, "Summary label (default: first scored year)");
    sub->add_option("--out", *out_dir, "Output directory");

    sub->callback([=]() {
        ensure_out_dir(*out_dir);
        std::string sdir = resolve_input(*series_dir);
        std::string fdir = resolve_input(*forecasts_dir);
        HotspotSeries series = io::read_series(sdir);

        std::vector<std::string> forecast_files;
        for (const auto& entry : fs::directory_iterator(fdir)) {
            std::string name = entry.path().filename().string();
            if (name.rfind("forecast-", 0) == 0 &&
                name.size() > 14 && name.substr(name.size() - 5) == ".json")
                forecast_files.push_back(entry.path().string());
        }
        std::sort(forecast_files.begin(), forecast_files.end());
        if (forecast_files.empty())
            throw Error(ErrorKind::EmptyInput, "no forecast-*.json in " + fdir);

        RunManifest manifest;
        manifest.command = "evaluate";
        add_series_inputs(manifest, sdir);

        std::vector<WeeklyScore> scores;
        for (const auto& file : forecast_files) {
            ForecastResult f = io::read_forecast(file);
            std::size_t v = week_index(series, f.target_week);
            if (f.predictions.size() != series.y.rows())
                throw Error(ErrorKind::DimensionMismatch,
                            "week " + f.target_week + ": forecast has " +
                                std::to_string(f.predictions.size()) +
                                " subzones, series has " +
                                std::to_string(series.y.rows()));
            Confusion c = confusion_counts(f.predictions, series.y.col_raw(v));
            scores.push_back(weekly_metrics(c, f.target_week));
            manifest.inputs.emplace_back(file, digest_file(file));
        }

        std::vector<std::vector<double>> weights;
        if (!models_dir->empty()) {
            for (const auto& model : io::read_models(resolve_input(*models_dir)))
                weights.push_back(model.w);
        }
        YearlySummary summary = yearly_summary(scores, weights);
        summary.year = year->empty()
                           ? scores.front().week.substr(0, scores.front().week.find("-W"))
                           : *year;

        io::write_weekly_scores_csv(*out_dir + "/weekly_metrics.csv", scores);
        io::write_summary_json(*out_dir + "/summary.json", summary);
        manifest.config = {{"year", summary.year},
                           {"weeks_scored", summary.weeks_scored}};
        write_manifest(*out_dir, manifest);
        std::cout << "scored " << scores.size() << " weeks; micro F1 "
                  << io::format_double(summary.micro_f1) << "\n";
    });
}

void register_stability(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "stability", "SSIM between consecutive learned weekly matrices");
    sub->set_config("--config");
    auto models_dir = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>("out");
    sub->add_option("--models", *models_dir, "Models directory from learn")
        ->required();
    sub->add_option("--out", *out_dir, "Output directory");

    sub->callback([=]() {
        ensure_out_dir(*out_dir);
        std::string dir = resolve_input(*models_dir);
        auto models = io::read_models(dir);
        auto values = consecutive_ssim(models);

        std::ostringstream csv;
        csv << "week_a,week_b,ssim\n";
        for (std::size_t k = 0; k < values.size(); ++k)
            csv << models[k].target_week << "," << models[k + 1].target_week << ","
                << io::format_double(values[k]) << "\n";
        io::write_text_file(*out_dir + "/ssim.csv", csv.str());

        RunManifest manifest;
        manifest.command = "stability";
        manifest.config = {{"models", models.size()}};
        for (const auto& model : models) {
            std::string path = dir + "/model-" + model.target_week + ".json";
            manifest.inputs.emplace_back(path, digest_file(path));
        }
        write_manifest(*out_dir, manifest);
        std::cout << "wrote " << values.size() << " consecutive SSIM values to "
                  << *out_dir << "/ssim.csv\n";
    });
}

void register_network(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "network", "Aggregate yearly networks and region metrics");
    sub->set_config("--config");
    auto models_dir = std::make_shared<std::string>();
    auto subzones = std::make_shared<std::string>();
    auto commutes = std::make_shared<std::string>();
    auto grid_map = std::make_shared<std::string>();
    auto population_mode = std::make_shared<std::string>("raw");
    auto out_dir = std::make_shared<std::string>("out");
    sub->add_option("--models", *models_dir, "Models directory from learn")
        ->required();
    sub->add_option("--subzones", *subzones,
                    "Subzone GeoJSON (enables rollups and region metrics)");
    sub->add_option("--commutes", *commutes, "home_grid,work_grid CSV");
    sub->add_option("--grid-map", *grid_map, "grid_id,subzone_id CSV");
    sub->add_option("--population-mode", *population_mode,
                    "Population weighting for the mobility ratio")
        ->check(CLI::IsMember({"raw", "density"}));
    sub->add_option("--out", *out_dir, "Output directory");

    sub->callback([=]() {
        ensure_out_dir(*out_dir);
        std::string mdir = resolve_input(*models_dir);
        std::vector<std::string> labels;
        auto models = io::read_models(mdir, &labels);

        RunManifest manifest;
        manifest.command = "network";
        manifest.config = {{"models", models.size()},
                           {"population_mode", *population_mode}};
        for (const auto& model : models) {
            std::string path = mdir + "/model-" + model.target_week + ".json";
            manifest.inputs.emplace_back(path, digest_file(path));
        }

        std::vector<std::string> warnings;
        FlowNetwork learned = aggregate_yearly(models, labels, &warnings);
        for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
        io::write_network(*out_dir, "learned_network", learned);

        if (!subzones->empty()) {
            std::string spath = resolve_input(*subzones);
            SubzoneIndex index = load_index_file(spath);
            manifest.inputs.emplace_back(spath, digest_file(spath));
            if (index.ids() != labels)
                throw Error(ErrorKind::DimensionMismatch,
                            "subzone index does not match model labels");
            io::write_network(*out_dir, "learned_planning_areas",
                              rollup_planning_areas(learned, index));

            if (!commutes->empty() && !grid_map->empty()) {
                std::string cpath = resolve_input(*commutes);
                std::string gpath = resolve_input(*grid_map);
                manifest.inputs.emplace_back(cpath, digest_file(cpath));
                manifest.inputs.emplace_back(gpath, digest_file(gpath));
                std::size_t unmapped = 0;
                FlowNetwork mobility =
                    build_mobility_network(io::read_commutes_csv(cpath),
                                           io::read_grid_map_csv(gpath), index,
                                           &unmapped);
                manifest.config["tuples_unmapped"] = unmapped;
                io::write_network(*out_dir, "mobility_network", mobility);
                io::write_network(*out_dir, "mobility_planning_areas",
                                  rollup_planning_areas(mobility, index));
                RegionMetrics metrics = region_metrics(
                    learned, mobility, index, *population_mode == "density");
                io::write_region_metrics_csv(*out_dir + "/region_metrics.csv",
                                             metrics);
            }
        }
        write_manifest(*out_dir, manifest);
        std::cout << "wrote networks to " << *out_dir << "\n";
    });
}

void register_compare(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "compare", "Correlate mobility and transmission region metrics");
    sub->set_config("--config");
    auto metrics_path = std::make_shared<std::string>();
    auto top_k = std::make_shared<long>(10);
    auto out_dir = std::make_shared<std::string>("out");
    sub->add_option("--metrics", *metrics_path, "region_metrics.csv from network")
        ->required();
    sub->add_option("--top-k", *top_k, "Top-k set size for Jaccard overlap")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", *out_dir, "Output directory");

    sub->callback([=]() {
        ensure_out_dir(*out_dir);
        std::string path = resolve_input(*metrics_path);
        RegionMetrics metrics = io::read_region_metrics_csv(path);
        ComparisonReport report = compare_networks(metrics, *top_k);
        io::write_comparison_json(*out_dir + "/comparison.json", report);

        RunManifest manifest;
        manifest.command = "compare";
        manifest.config = {{"top_k", *top_k}};
        manifest.inputs.emplace_back(path, digest_file(path));
        write_manifest(*out_dir, manifest);
        for (const auto& name : report.zero_variance)
            std::cerr << "note: " << name << " has zero variance; correlations null\n";
        std::cout << "wrote " << *out_dir << "/comparison.json\n";
    });
}

void register_synth(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "synth", "Generate a synthetic world with planted dynamics");
    sub->set_config("--config");
    auto n = std::make_shared<std::size_t>(20);
    auto t_weeks = std::make_shared<std::size_t>(40);
    auto lookback = std::make_shared<std::size_t>(2);
    auto density = std::make_shared<double>(0.10);
    auto value_lo = std::make_shared<double>(0.5);
    auto value_hi = std::make_shared<double>(1.5);
    auto w_star = std::make_shared<std::vector<double>>();
    auto noise_rate = std::make_shared<double>(0.0);
    auto init_rate = std::make_shared<double>(0.3);
    auto seed = std::make_shared<std::uint64_t>(kReferenceWorldSeed);
    auto threshold = std::make_shared<long>(3);
    auto reference = std::make_shared<bool>(false);
    auto out_dir = std::make_shared<std::string>("out");
    sub->add_option("--n", *n, "Regions");
    sub->add_option("--t-weeks", *t_weeks, "Weeks");
    sub->add_option("--lookback", *lookback, "Planted lookback H");
    sub->add_option("--density", *density, "Planted matrix density")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--value-lo", *value_lo, "Planted entry lower bound");
    sub->add_option("--value-hi", *value_hi, "Planted entry upper bound");
    sub->add_option("--w-star", *w_star, "Planted temporal weights")->expected(-1);
    sub->add_option("--noise-rate", *noise_rate, "Presence noise probability");
    sub->add_option("--init-rate", *init_rate, "Seed-week presence probability");
    sub->add_option("--seed", *seed, "World seed");
    sub->add_option("--hotspot-threshold", *threshold,
                    "Count written for hot cells")
        ->check(hotspot_threshold_check());
    sub->add_flag("--reference", *reference,
                  "Use the committed reference scenario (overrides shape flags)");
    sub->add_option("--out", *out_dir, "Output directory");

    sub->callback([=]() {
        ensure_out_dir(*out_dir);
        SynthScenario scenario;
        if (*reference) {
            scenario = reference_scenario(*noise_rate);
        } else {
            std::vector<double> w = *w_star;
            if (w.empty()) w = {0.8, 0.2};
            scenario = make_planted(*n, *t_weeks, *lookback, *density, *value_lo,
                                    *value_hi, w, *noise_rate, *seed);
            scenario.init_rate = *init_rate;
        }
        HotspotSeries series = generate(scenario);
        WeeklyCaseCounts counts = to_counts(series, *threshold);
        io::write_counts_csv(*out_dir + "/counts.csv", counts);

        json truth;
        truth["n"] = scenario.N;
        truth["t_weeks"] = scenario.T;
        truth["lookback"] = scenario.H;
        truth["noise_rate"] = io::round12(scenario.noise_rate);
        truth["init_rate"] = io::round12(scenario.init_rate);
        truth["seed"] = scenario.seed;
        truth["reference"] = *reference;
        json w = json::array();
        for (double v : scenario.w_star) w.push_back(io::round12(v));
        truth["w_star"] = w;
        json rows = json::array();
        for (std::size_t i = 0; i < scenario.N; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < scenario.N; ++j)
                row.push_back(io::round12(scenario.P_star(i, j)));
            rows.push_back(row);
        }
        truth["p_star"] = rows;
        io::write_text_file(*out_dir + "/truth.json", truth.dump(2) + "\n");

        RunManifest manifest;
        manifest.command = "synth";
        manifest.config = {{"n", scenario.N},
                           {"t_weeks", scenario.T},
                           {"lookback", scenario.H},
                           {"noise_rate", scenario.noise_rate},
                           {"init_rate", scenario.init_rate},
                           {"hotspot_threshold", *threshold},
                           {"reference", *reference}};
        manifest.seed = scenario.seed;
        write_manifest(*out_dir, manifest);
        std::cout << "wrote synthetic world (" << scenario.N << " regions, "
                  << scenario.T << " weeks) to " << *out_dir << "\n";
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"epinet: weekly hotspot spreading-network pipeline"};
    app.require_subcommand(1);
    register_ingest(app);
    register_binarize(app);
    register_learn(app);
    register_forecast(app);
    register_evaluate(app);
    register_stability(app);
    register_network(app);
    register_compare(app);
    register_synth(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
