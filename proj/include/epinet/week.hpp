#pragma once

#include <optional>
#include <string>

#include "epinet/date.hpp"

namespace epinet {

/// Week boundary convention. Weeks begin on start_day (0 = Sunday default)
/// and are labeled by the year and ordinal week of their pivot day, the
/// fourth day of the week (so a Sunday-started week is labeled by its
/// Wednesday, mirroring the common epidemiological-week convention).
struct WeekRule {
    int start_day = 0;  // 0 = Sunday .. 6 = Saturday
};

/// One epidemiological week, identified by the serial day of its first day.
struct EpiWeek {
    long start_serial = 0;

    bool operator==(const EpiWeek&) const = default;
    bool operator<(const EpiWeek& o) const { return start_serial < o.start_serial; }

    EpiWeek next() const { return EpiWeek{start_serial + 7}; }
    EpiWeek prev() const { return EpiWeek{start_serial - 7}; }
};

/// The week containing the given date under the rule.
EpiWeek week_of(const Date& d, const WeekRule& rule);

/// "YYYY-Www" label, e.g. "2013-W24".
std::string week_label(const EpiWeek& week);

/// Parses a "YYYY-Www" label back to a week. The rule fixes which calendar
/// week carries that label. Returns nullopt on malformed labels or labels
/// that do not exist under the rule (e.g. W54).
std::optional<EpiWeek> parse_week_label(const std::string& label, const WeekRule& rule);

}  // namespace epinet
