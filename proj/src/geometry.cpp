#include "epinet/geometry.hpp"

#include <cmath>

namespace epinet {

namespace {

constexpr double kEps = 1e-12;

bool on_segment(const Point& p, const Point& a, const Point& b) {
    double len2 = (b.lon - a.lon) * (b.lon - a.lon) + (b.lat - a.lat) * (b.lat - a.lat);
    // A zero-length edge (e.g. a ring's repeated closing vertex) contains
    // only its own point; the projection test below would accept everything.
    if (len2 <= kEps)
        return std::fabs(p.lon - a.lon) <= kEps && std::fabs(p.lat - a.lat) <= kEps;
    double cross = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
    if (std::fabs(cross) > kEps) return false;
    double dot = (p.lon - a.lon) * (b.lon - a.lon) + (p.lat - a.lat) * (b.lat - a.lat);
    return dot >= -kEps && dot <= len2 + kEps;
}

bool ray_crosses(const Point& p, const Point& a, const Point& b) {
    // Horizontal ray to +lon; half-open rule on lat avoids double counting
    // at vertices.
    if ((a.lat > p.lat) == (b.lat > p.lat)) return false;
    double x = a.lon + (p.lat - a.lat) / (b.lat - a.lat) * (b.lon - a.lon);
    return x > p.lon;
}

}  // namespace

bool point_in_polygon(const Point& p, const Polygon& poly) {
    bool inside = false;
    for (const Ring& ring : poly) {
        std::size_t n = ring.size();
        if (n < 3) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = ring[i];
            const Point& b = ring[(i + 1) % n];
            if (on_segment(p, a, b)) return true;
            if (ray_crosses(p, a, b)) inside = !inside;
        }
    }
    return inside;
}

double polygon_area_km2(const Polygon& poly) {
    if (poly.empty()) return 0.0;
    constexpr double kKmPerDegLat = 111.32;
    double total = 0.0;
    bool first = true;
    for (const Ring& ring : poly) {
        std::size_t n = ring.size();
        // Ignore an explicit closing vertex so closed and implicit ring
        // forms measure identically (it would skew the mean latitude).
        if (n >= 2 && ring.front().lon == ring.back().lon &&
            ring.front().lat == ring.back().lat)
            --n;
        if (n < 3) continue;
        double sum_lat = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum_lat += ring[i].lat;
        double scale = std::cos(sum_lat / static_cast<double>(n) * M_PI / 180.0);
        double shoelace = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = ring[i];
            const Point& b = ring[(i + 1) % n];
            shoelace += a.lon * b.lat - b.lon * a.lat;
        }
        double area = std::fabs(shoelace) / 2.0 * kKmPerDegLat * kKmPerDegLat * scale;
        total += first ? area : -area;
        first = false;
    }
    return std::fabs(total);
}

}  // namespace epinet
