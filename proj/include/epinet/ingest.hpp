#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epinet/date.hpp"
#include "epinet/geometry.hpp"
#include "epinet/matrix.hpp"
#include "epinet/week.hpp"

namespace epinet {

/// One geolocated case-locality row from a weekly snapshot.
struct LocalityRecord {
    std::string street_address;
    double latitude = 0.0;    // degrees WGS84
    double longitude = 0.0;   // degrees WGS84
    long cluster_number = 0;
    long recent_cases = 0;        // last 2 weeks
    long total_cluster_cases = 0;
    Date collection_date;
};

/// Snapshot column names; defaults match the published dataset.
struct SnapshotColumns {
    std::string address = "address";
    std::string lat = "lat";
    std::string lng = "lng";
    std::string cluster_no = "cluster_no";
    std::string recent_cases = "recent_cases";
    std::string total_cases = "total_cases";
    std::string date = "date";
};

struct ParseResult {
    std::vector<LocalityRecord> records;
    std::size_t skipped = 0;  // rows dropped for unparseable fields
};

/// One subzone of the spatial index.
struct Subzone {
    std::string subzone_id;
    std::string planning_area_id;
    Polygon polygon;
    double population = 0.0;
    double area_km2 = 0.0;
    bool low_density_flag = false;  // density below 10 persons per km^2
};

/// Ordered spatial index. All matrices index subzones by this order.
struct SubzoneIndex {
    std::vector<Subzone> subzones;

    std::size_t size() const { return subzones.size(); }
    /// Position of a subzone id, or nullopt.
    std::optional<std::size_t> position(const std::string& subzone_id) const;
    std::vector<std::string> ids() const;
};

/// Weekly count matrix: rows = subzones in index order, columns = weeks.
struct WeeklyCaseCounts {
    Mat<long> counts;                       // N x T, non-negative
    std::vector<std::string> week_labels;   // strictly increasing, gap-free
    std::vector<std::string> subzone_ids;   // index order
    std::vector<std::string> warnings;      // e.g. materialized gap weeks
};

/// Parses one snapshot CSV. The filename supplies the fallback collection
/// date when it starts with a YYMMDD token; a per-row date column, when
/// present and parseable (ISO or YYMMDD), takes precedence. Rows with
/// unparseable coordinates, counts, or dates are skipped and counted.
/// Throws MissingHeader when the header row is absent or lacks the address
/// and coordinate columns; NoDateSource when neither the filename nor a
/// date column can date the rows.
ParseResult parse_snapshot(std::istream& raw_csv, const std::string& filename,
                           const SnapshotColumns& columns = {});

/// The unique subzone containing the record's point, via the even-odd
/// point-in-polygon test. Boundary points resolve to the lexicographically
/// smallest subzone_id. Returns nullopt when outside every polygon.
std::optional<std::string> assign_subzone(const LocalityRecord& record,
                                          const SubzoneIndex& index);

/// Accumulates records into the weekly count matrix. A locality is counted
/// once per (street_address, week); records outside all polygons are
/// excluded and tallied in `unmapped`. Missing interior weeks materialize
/// as all-zero columns with a warning. Throws EmptyAfterFiltering when no
/// record maps.
WeeklyCaseCounts build_weekly_counts(const std::vector<LocalityRecord>& records,
                                     const SubzoneIndex& index,
                                     const WeekRule& week_rule,
                                     std::size_t* unmapped = nullptr);

/// Loads a GeoJSON FeatureCollection with properties subzone_id,
/// planning_area_id, population (optional area_km2; computed from the
/// polygon otherwise). Throws ParseError on malformed input.
SubzoneIndex load_subzone_index(std::istream& geojson);

/// Point-in-polygon lookup for grid centroids: returns subzone id per
/// (grid_id, lon, lat) row, skipping grids outside every polygon.
std::map<std::string, std::string> map_grids_to_subzones(
    const std::vector<std::tuple<std::string, double, double>>& grid_centroids,
    const SubzoneIndex& index);

}  // namespace epinet
