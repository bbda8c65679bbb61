#include "epinet/hotspot.hpp"

#include "epinet/error.hpp"

namespace epinet {

HotspotSeries binarize(const WeeklyCaseCounts& counts, long c) {
    if (c < 1)
        throw Error(ErrorKind::InvalidThreshold,
                    "hotspot threshold must be >= 1, got " + std::to_string(c));
    HotspotSeries out;
    out.c = c;
    out.week_labels = counts.week_labels;
    out.subzone_ids = counts.subzone_ids;
    out.y = BitMatrix(counts.counts.rows(), counts.counts.cols(), 0);
    out.y_hat = BitMatrix(counts.counts.rows(), counts.counts.cols(), 0);
    for (std::size_t i = 0; i < counts.counts.rows(); ++i) {
        for (std::size_t t = 0; t < counts.counts.cols(); ++t) {
            long l = counts.counts(i, t);
            out.y(i, t) = l >= c ? 1 : 0;
            out.y_hat(i, t) = l >= 1 ? 1 : 0;
        }
    }
    return out;
}

}  // namespace epinet
