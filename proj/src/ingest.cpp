#include "epinet/ingest.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <set>

#include "epinet/csv.hpp"
#include "epinet/error.hpp"
#include "json.hpp"

namespace epinet {
namespace {

std::optional<double> try_parse_double(const std::string& s) {
    std::string t = csv::trim(s);
    if (t.empty()) return std::nullopt;
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) return std::nullopt;
    return v;
}

std::optional<long> try_parse_long(const std::string& s) {
    std::string t = csv::trim(s);
    if (t.empty()) return std::nullopt;
    char* end = nullptr;
    long v = std::strtol(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size()) return std::nullopt;
    return v;
}

// Leading YYMMDD token of the basename, e.g. "data/130615.csv" -> 2013-06-15.
std::optional<Date> date_from_filename(const std::string& filename) {
    std::size_t slash = filename.find_last_of("/\\");
    std::string base = slash == std::string::npos ? filename : filename.substr(slash + 1);
    if (base.size() < 6) return std::nullopt;
    return parse_yymmdd(base.substr(0, 6));
}

std::optional<Date> parse_any_date(const std::string& s) {
    if (auto d = parse_iso_date(csv::trim(s))) return d;
    return parse_yymmdd(csv::trim(s));
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (csv::trim(header[i]) == name) return i;
    return std::nullopt;
}

std::string cell(const std::vector<std::string>& row, std::size_t i) {
    return i < row.size() ? row[i] : std::string();
}

}  // namespace

std::optional<std::size_t> SubzoneIndex::position(const std::string& subzone_id) const {
    for (std::size_t i = 0; i < subzones.size(); ++i)
        if (subzones[i].subzone_id == subzone_id) return i;
    return std::nullopt;
}

std::vector<std::string> SubzoneIndex::ids() const {
    std::vector<std::string> out;
    out.reserve(subzones.size());
    for (const auto& s : subzones) out.push_back(s.subzone_id);
    return out;
}

ParseResult parse_snapshot(std::istream& raw_csv, const std::string& filename,
                           const SnapshotColumns& columns) {
    auto rows = csv::read_all(raw_csv);
    if (rows.empty())
        throw Error(ErrorKind::MissingHeader, "snapshot has no header row: " + filename);

    const auto& header = rows.front();
    auto c_addr = find_column(header, columns.address);
    auto c_lat = find_column(header, columns.lat);
    auto c_lng = find_column(header, columns.lng);
    if (!c_addr || !c_lat || !c_lng)
        throw Error(ErrorKind::MissingHeader,
                    "snapshot header lacks address/coordinate columns: " + filename);
    auto c_cluster = find_column(header, columns.cluster_no);
    auto c_recent = find_column(header, columns.recent_cases);
    auto c_total = find_column(header, columns.total_cases);
    auto c_date = find_column(header, columns.date);

    auto fallback_date = date_from_filename(filename);
    if (!c_date && !fallback_date)
        throw Error(ErrorKind::NoDateSource,
                    "no date column and filename has no YYMMDD token: " + filename);

    ParseResult result;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        LocalityRecord rec;
        rec.street_address = csv::trim(cell(row, *c_addr));

        auto lat = try_parse_double(cell(row, *c_lat));
        auto lng = try_parse_double(cell(row, *c_lng));
        if (!lat || !lng || *lat < -90.0 || *lat > 90.0 || *lng < -180.0 || *lng > 180.0) {
            ++result.skipped;
            continue;
        }
        rec.latitude = *lat;
        rec.longitude = *lng;

        // Count columns are optional metadata; present-but-garbled values
        // invalidate the row, absent columns default to zero.
        bool bad = false;
        auto read_count = [&](const std::optional<std::size_t>& col, long& out) {
            if (!col) return;
            auto v = try_parse_long(cell(row, *col));
            if (!v || *v < 0) { bad = true; return; }
            out = *v;
        };
        read_count(c_cluster, rec.cluster_number);
        read_count(c_recent, rec.recent_cases);
        read_count(c_total, rec.total_cluster_cases);
        if (bad) {
            ++result.skipped;
            continue;
        }

        // Row date takes precedence over the filename date.
        std::optional<Date> date;
        if (c_date) {
            std::string raw = csv::trim(cell(row, *c_date));
            if (!raw.empty()) date = parse_any_date(raw);
        }
        if (!date) date = fallback_date;
        if (!date) {
            ++result.skipped;
            continue;
        }
        rec.collection_date = *date;
        result.records.push_back(std::move(rec));
    }
    return result;
}

std::optional<std::string> assign_subzone(const LocalityRecord& record,
                                          const SubzoneIndex& index) {
    Point p{record.longitude, record.latitude};
    const std::string* best = nullptr;
    for (const auto& sz : index.subzones) {
        if (!point_in_polygon(p, sz.polygon)) continue;
        if (!best || sz.subzone_id < *best) best = &sz.subzone_id;
    }
    if (!best) return std::nullopt;
    return *best;
}

WeeklyCaseCounts build_weekly_counts(const std::vector<LocalityRecord>& records,
                                     const SubzoneIndex& index,
                                     const WeekRule& week_rule,
                                     std::size_t* unmapped) {
    // Unique (subzone row, week, address) triples; set dedup makes the
    // result independent of record order.
    std::set<std::tuple<std::size_t, long, std::string>> triples;
    std::size_t dropped = 0;
    for (const auto& rec : records) {
        auto id = assign_subzone(rec, index);
        if (!id) {
            ++dropped;
            continue;
        }
        std::size_t row = *index.position(*id);
        EpiWeek wk = week_of(rec.collection_date, week_rule);
        triples.emplace(row, wk.start_serial, rec.street_address);
    }
    if (unmapped) *unmapped = dropped;
    if (triples.empty())
        throw Error(ErrorKind::EmptyAfterFiltering, "no record maps to any subzone");

    // The set orders by subzone row first, so the global week range has to
    // scan every triple; taking begin()'s serial would only bound row 0.
    long lo = std::get<1>(*triples.begin());
    long hi = lo;
    for (const auto& t : triples) {
        lo = std::min(lo, std::get<1>(t));
        hi = std::max(hi, std::get<1>(t));
    }
    std::size_t weeks = static_cast<std::size_t>((hi - lo) / 7) + 1;

    WeeklyCaseCounts out;
    out.counts = Mat<long>(index.size(), weeks, 0);
    out.subzone_ids = index.ids();
    for (std::size_t t = 0; t < weeks; ++t)
        out.week_labels.push_back(week_label(EpiWeek{lo + static_cast<long>(t) * 7}));
    for (const auto& [row, serial, addr] : triples) {
        (void)addr;
        std::size_t t = static_cast<std::size_t>((serial - lo) / 7);
        ++out.counts(row, t);
    }

    std::vector<bool> populated(weeks, false);
    for (const auto& t : triples)
        populated[static_cast<std::size_t>((std::get<1>(t) - lo) / 7)] = true;
    for (std::size_t t = 0; t < weeks; ++t)
        if (!populated[t])
            out.warnings.push_back("week " + out.week_labels[t] +
                                   " has no records; materialized as zeros");
    return out;
}

SubzoneIndex load_subzone_index(std::istream& geojson) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(geojson);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("invalid GeoJSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features") || !doc["features"].is_array())
        throw Error(ErrorKind::ParseError, "expected a GeoJSON FeatureCollection");

    auto read_ring = [](const nlohmann::json& arr) {
        Ring ring;
        for (const auto& pt : arr) {
            if (!pt.is_array() || pt.size() < 2)
                throw Error(ErrorKind::ParseError, "ring coordinate is not [lon, lat]");
            ring.push_back(Point{pt[0].get<double>(), pt[1].get<double>()});
        }
        // GeoJSON rings repeat the first vertex at the end; closure is
        // implicit here, so drop the duplicate.
        if (ring.size() >= 2 && ring.front().lon == ring.back().lon &&
            ring.front().lat == ring.back().lat)
            ring.pop_back();
        return ring;
    };

    SubzoneIndex index;
    for (const auto& feature : doc["features"]) {
        Subzone sz;
        const auto& props = feature.at("properties");
        sz.subzone_id = props.at("subzone_id").get<std::string>();
        sz.planning_area_id = props.value("planning_area_id", std::string());
        sz.population = props.value("population", 0.0);

        const auto& geom = feature.at("geometry");
        std::string gtype = geom.value("type", "");
        const auto& coords = geom.at("coordinates");
        if (gtype == "Polygon") {
            for (const auto& ring : coords) sz.polygon.push_back(read_ring(ring));
        } else if (gtype == "MultiPolygon") {
            // Rings of every part share one even-odd polygon; holes still
            // subtract and disjoint shells still add under that rule.
            for (const auto& part : coords)
                for (const auto& ring : part) sz.polygon.push_back(read_ring(ring));
        } else {
            throw Error(ErrorKind::ParseError, "unsupported geometry type: " + gtype);
        }
        if (props.contains("area_km2"))
            sz.area_km2 = props["area_km2"].get<double>();
        else
            sz.area_km2 = polygon_area_km2(sz.polygon);
        double density = sz.area_km2 > 0.0 ? sz.population / sz.area_km2 : 0.0;
        sz.low_density_flag = density < 10.0;
        index.subzones.push_back(std::move(sz));
    }

    std::set<std::string> seen;
    for (const auto& sz : index.subzones)
        if (!seen.insert(sz.subzone_id).second)
            throw Error(ErrorKind::ParseError, "duplicate subzone_id: " + sz.subzone_id);
    return index;
}

std::map<std::string, std::string> map_grids_to_subzones(
    const std::vector<std::tuple<std::string, double, double>>& grid_centroids,
    const SubzoneIndex& index) {
    std::map<std::string, std::string> mapping;
    for (const auto& [grid_id, lon, lat] : grid_centroids) {
        LocalityRecord probe;
        probe.longitude = lon;
        probe.latitude = lat;
        if (auto id = assign_subzone(probe, index)) mapping[grid_id] = *id;
    }
    return mapping;
}

}  // namespace epinet
