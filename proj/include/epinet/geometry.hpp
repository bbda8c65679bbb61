#pragma once

#include <vector>

namespace epinet {

struct Point {
    double lon = 0.0;
    double lat = 0.0;
};

/// One closed ring of a polygon (first vertex needs not repeat at the end;
/// closure is implicit).
using Ring = std::vector<Point>;

/// A polygon as a set of rings evaluated with the even-odd rule, so holes
/// are simply additional rings.
using Polygon = std::vector<Ring>;

/// Even-odd (ray crossing) containment test over all rings. Points exactly
/// on a ring edge or vertex count as inside, so shared boundaries resolve
/// to containment in every adjacent polygon (callers tie-break).
bool point_in_polygon(const Point& p, const Polygon& poly);

/// Approximate planar area in km^2 (equirectangular shoelace scaled by
/// cos(mean latitude)). Holes subtract via the even-odd convention only if
/// wound; here rings simply sum absolute areas of the first ring minus the
/// rest.
double polygon_area_km2(const Polygon& poly);

}  // namespace epinet
