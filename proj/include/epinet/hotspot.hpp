#pragma once

#include <string>
#include <vector>

#include "epinet/ingest.hpp"
#include "epinet/matrix.hpp"

namespace epinet {

/// Paired binary states over subzones x weeks: y marks hotspots (count at
/// least the threshold), y_hat marks presence (count at least one). Since
/// the threshold is >= 1, y = 1 implies y_hat = 1 cell-wise.
struct HotspotSeries {
    BitMatrix y;
    BitMatrix y_hat;
    long c = 3;
    std::vector<std::string> week_labels;
    std::vector<std::string> subzone_ids;
};

/// Thresholds weekly counts into hotspot and presence states.
/// Throws InvalidThreshold when c < 1.
HotspotSeries binarize(const WeeklyCaseCounts& counts, long c);

}  // namespace epinet
