#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "doctest.h"
#include "epinet/error.hpp"
#include "epinet/io.hpp"
#include "epinet/manifest.hpp"
#include "epinet/synth.hpp"
#include "json.hpp"

using namespace epinet;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test case; removed on destruction.
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("epinet-test-" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

// Reference FNV-1a implementation, written independently of the library.
std::uint64_t fnv_oracle(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

TEST_CASE("fixed-format doubles carry twelve decimals") {
    CHECK(io::format_double(1.0) == "1.000000000000");
    CHECK(io::format_double(0.1) == "0.100000000000");
    CHECK(io::format_double(-2.5) == "-2.500000000000");
    CHECK(io::format_double(0.000000000002) == "0.000000000002");
}

TEST_CASE("round12 truncates noise and normalizes negative zero") {
    CHECK(io::round12(0.1234567890123456) == doctest::Approx(0.123456789012).epsilon(1e-15));
    CHECK(io::round12(1e-13) == 0.0);
    CHECK(io::round12(-1e-13) == 0.0);
    CHECK(!std::signbit(io::round12(-1e-13)));
    CHECK(io::round12(2.0) == 2.0);
}

TEST_CASE("fnv1a64 matches the published test vectors") {
    CHECK(fnv1a64("", 0) == 14695981039346656037ULL);           // offset basis
    CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cULL);
    std::string foobar = "foobar";
    CHECK(fnv1a64(foobar.data(), foobar.size()) == 0x85944171f73967e8ULL);
    for (const std::string& s : {"hello", "epinet", "2013-W24"})
        CHECK(fnv1a64(s.data(), s.size()) == fnv_oracle(s));
}

TEST_CASE("file digests are stable and prefixed") {
    TempDir dir("digest");
    io::write_text_file(dir.file("x.txt"), "hello");
    std::string digest = digest_file(dir.file("x.txt"));
    CHECK(digest.rfind("fnv1a64:", 0) == 0);
    CHECK(digest.size() == 8 + 16);
    char expected[32];
    std::snprintf(expected, sizeof expected, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv_oracle("hello")));
    CHECK(digest == expected);
    CHECK_THROWS_AS(digest_file(dir.file("missing.txt")), Error);
}

TEST_CASE("manifests are deterministic apart from the timestamp") {
    TempDir dir("manifest");
    io::write_text_file(dir.file("in.csv"), "subzone_id,w\nz,1\n");
    RunManifest m;
    m.command = "learn";
    m.config = {{"lookback", 4}, {"lambda1", 0.01}};
    m.inputs.emplace_back(dir.file("in.csv"), digest_file(dir.file("in.csv")));
    m.seed = 42;

    std::string a = render_manifest(m);
    std::string b = render_manifest(m);
    auto strip_timestamp = [](std::string text) {
        auto doc = nlohmann::json::parse(text);
        doc.erase("timestamp");
        return doc.dump(2);
    };
    CHECK(strip_timestamp(a) == strip_timestamp(b));

    auto doc = nlohmann::json::parse(a);
    CHECK(doc.at("command") == "learn");
    CHECK(doc.at("seed") == 42);
    CHECK(doc.at("config").at("lookback") == 4);
    CHECK(doc.at("timestamp").get<std::string>().size() == 20);  // ISO-8601 Z

    write_manifest(dir.str(), m);
    CHECK(fs::exists(dir.file("manifest.json")));
}

TEST_CASE("counts round-trip through CSV") {
    TempDir dir("counts");
    WeeklyCaseCounts counts;
    counts.counts = Mat<long>(2, 3, 0);
    counts.counts(0, 1) = 4;
    counts.counts(1, 2) = 7;
    counts.week_labels = {"2013-W24", "2013-W25", "2013-W26"};
    counts.subzone_ids = {"SZ-A", "SZ B,comma"};

    io::write_counts_csv(dir.file("counts.csv"), counts);
    WeeklyCaseCounts back = io::read_counts_csv(dir.file("counts.csv"));
    CHECK(back.counts.data() == counts.counts.data());
    CHECK(back.week_labels == counts.week_labels);
    CHECK(back.subzone_ids == counts.subzone_ids);

    io::write_text_file(dir.file("bad.csv"), "subzone_id,w1\nz,-3\n");
    CHECK_THROWS_AS(io::read_counts_csv(dir.file("bad.csv")), Error);
}

TEST_CASE("series round-trip and validate the hotspot invariant") {
    TempDir dir("series");
    HotspotSeries series = generate(
        make_planted(5, 8, 2, 0.4, 0.5, 1.5, {0.7, 0.3}, 0.0, 11));
    io::write_series(dir.str(), series);
    HotspotSeries back = io::read_series(dir.str());
    CHECK(back.y.data() == series.y.data());
    CHECK(back.y_hat.data() == series.y_hat.data());
    CHECK(back.week_labels == series.week_labels);
    CHECK(back.subzone_ids == series.subzone_ids);
    CHECK(back.c == series.c);

    SUBCASE("a hotspot without presence is rejected on read") {
        // Corrupt presence.csv by zeroing everything.
        BitMatrix zeros(series.y.rows(), series.y.cols(), 0);
        io::write_bits_csv(dir.file("presence.csv"), zeros, series.subzone_ids,
                           series.week_labels);
        bool any_hot = false;
        for (auto v : series.y.data()) any_hot |= v != 0;
        REQUIRE(any_hot);  // otherwise the corruption is invisible
        CHECK_THROWS_AS(io::read_series(dir.str()), Error);
    }
}

TEST_CASE("models round-trip with their matrices") {
    TempDir dir("models");
    SpreadingModel model;
    model.P = Matrix(2, 2, 0.0);
    model.P(0, 1) = 0.25;
    model.P(1, 0) = -0.125;
    model.w = {0.8, 0.2};
    model.target_week = "2013-W24";
    model.final_loss = 1.5;
    model.iterations_used = 17;

    io::write_model(dir.str(), model, {"SZ-A", "SZ-B"});
    std::vector<std::string> labels;
    SpreadingModel back = io::read_model(dir.file("model-2013-W24.json"), &labels);
    CHECK(labels == std::vector<std::string>{"SZ-A", "SZ-B"});
    CHECK(back.target_week == "2013-W24");
    CHECK(back.w == model.w);
    CHECK(back.final_loss == 1.5);
    CHECK(back.iterations_used == 17);
    CHECK(back.P.data() == model.P.data());

    SUBCASE("directories of models sort by target week") {
        SpreadingModel second = model;
        second.target_week = "2013-W02";
        io::write_model(dir.str(), second, {"SZ-A", "SZ-B"});
        auto models = io::read_models(dir.str());
        REQUIRE(models.size() == 2);
        CHECK(models[0].target_week == "2013-W02");
        CHECK(models[1].target_week == "2013-W24");
    }

    SUBCASE("an empty directory is an error") {
        TempDir empty("models-empty");
        CHECK_THROWS_AS(io::read_models(empty.str()), Error);
    }
}

TEST_CASE("forecasts round-trip") {
    TempDir dir("forecast");
    ForecastResult f;
    f.scores = {0.25, 0.75};
    f.predictions = {0, 1};
    f.threshold_value = 0.5;
    f.target_week = "2013-W30";

    io::write_forecast(dir.str(), f, {"SZ-A", "SZ-B"});
    std::vector<std::string> ids;
    ForecastResult back = io::read_forecast(dir.file("forecast-2013-W30.json"), &ids);
    CHECK(ids == std::vector<std::string>{"SZ-A", "SZ-B"});
    CHECK(back.scores == f.scores);
    CHECK(back.predictions == f.predictions);
    CHECK(back.threshold_value == 0.5);
    CHECK(back.target_week == "2013-W30");
    CHECK(fs::exists(dir.file("forecast-2013-W30.csv")));
}

TEST_CASE("networks and metrics round-trip") {
    TempDir dir("network");
    FlowNetwork net;
    net.labels = {"SZ-A", "SZ-B"};
    net.weights = Matrix(2, 2, 0.0);
    net.weights(0, 1) = 1.5;
    io::write_network(dir.str(), "learned_network", net);
    FlowNetwork back = io::read_network_csv(dir.file("learned_network.csv"));
    CHECK(back.labels == net.labels);
    CHECK(back.weights.data() == net.weights.data());

    // The edge list holds only the nonzero entry.
    std::string edges = io::read_text_file(dir.file("learned_network-edges.csv"));
    CHECK(edges == "src_id,dst_id,weight\nSZ-A,SZ-B,1.500000000000\n");

    RegionMetrics metrics;
    metrics.labels = {"SZ-A", "SZ-B"};
    metrics.transmission_in = {1.0, 0.5};
    metrics.transmission_out = {0.25, 1.0};
    metrics.mobility_ratio = {1.0, 0.125};
    metrics.population = {1.0, 0.0625};
    io::write_region_metrics_csv(dir.file("region_metrics.csv"), metrics);
    RegionMetrics mback = io::read_region_metrics_csv(dir.file("region_metrics.csv"));
    CHECK(mback.labels == metrics.labels);
    CHECK(mback.transmission_in == metrics.transmission_in);
    CHECK(mback.transmission_out == metrics.transmission_out);
    CHECK(mback.mobility_ratio == metrics.mobility_ratio);
    CHECK(mback.population == metrics.population);

    io::write_text_file(dir.file("wrong.csv"), "id,in\nz,1\n");
    CHECK_THROWS_AS(io::read_region_metrics_csv(dir.file("wrong.csv")), Error);
}

TEST_CASE("comparison reports serialize optionals as null") {
    TempDir dir("compare");
    ComparisonReport rep;
    rep.top_k = 5;
    rep.pearson_in = 0.75;
    rep.spearman_in = std::nullopt;
    rep.jaccard_in = 0.5;
    rep.zero_variance = {"transmission_in"};
    io::write_comparison_json(dir.file("comparison.json"), rep);

    auto doc = nlohmann::json::parse(io::read_text_file(dir.file("comparison.json")));
    CHECK(doc.at("top_k") == 5);
    CHECK(doc.at("pearson_in") == 0.75);
    CHECK(doc.at("spearman_in").is_null());
    CHECK(doc.at("jaccard_in") == 0.5);
    CHECK(doc.at("zero_variance")[0] == "transmission_in");
}

TEST_CASE("commute and grid-map CSVs parse") {
    TempDir dir("commute");
    io::write_text_file(dir.file("commutes.csv"),
                        "home_grid,work_grid\ng1,g2\ng1,g1\n");
    auto commutes = io::read_commutes_csv(dir.file("commutes.csv"));
    REQUIRE(commutes.size() == 2);
    CHECK(commutes[0] == std::pair<std::string, std::string>{"g1", "g2"});
    CHECK(commutes[1].second == "g1");

    std::map<std::string, std::string> mapping = {{"g1", "SZ-A"}, {"g2", "SZ-B"}};
    io::write_grid_map_csv(dir.file("grid_map.csv"), mapping);
    CHECK(io::read_grid_map_csv(dir.file("grid_map.csv")) == mapping);
}

TEST_CASE("weekly scores and summaries serialize with fixed shapes") {
    TempDir dir("scores");
    WeeklyScore s;
    s.week = "2013-W24";
    s.counts = Confusion{3, 1, 90, 6};
    s.accuracy = 0.93;
    s.precision = 0.75;
    s.recall = 1.0 / 3.0;
    s.f1 = 0.4615384615384615;
    io::write_weekly_scores_csv(dir.file("weekly_metrics.csv"), {s});
    std::string text = io::read_text_file(dir.file("weekly_metrics.csv"));
    CHECK(text.rfind("week,tp,fp,tn,fn,accuracy,precision,recall,f1\n", 0) == 0);
    CHECK(text.find("2013-W24,3,1,90,6,0.93") != std::string::npos);

    YearlySummary y;
    y.year = "2013";
    y.weeks_scored = 1;
    y.weight_stats.push_back(WeightStats{0.1, 0.2, 0.3, 0.4});
    io::write_summary_json(dir.file("summary.json"), y);
    auto doc = nlohmann::json::parse(io::read_text_file(dir.file("summary.json")));
    CHECK(doc.at("year") == "2013");
    CHECK(doc.at("weeks_scored") == 1);
    CHECK(doc.at("macro").contains("accuracy_mean"));
    CHECK(doc.at("micro").contains("f1"));
    CHECK(doc.at("pooled").contains("tp"));
    REQUIRE(doc.at("weight_stats").size() == 1);
    CHECK(doc.at("weight_stats")[0].at("h") == 1);
    CHECK(doc.at("weight_stats")[0].at("median") == 0.2);
}
