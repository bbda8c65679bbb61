#include "epinet/week.hpp"

#include <cctype>
#include <cstdio>

namespace epinet {

EpiWeek week_of(const Date& d, const WeekRule& rule) {
    long serial = days_from_civil(d);
    int dow = day_of_week(d);
    int shift = ((dow - rule.start_day) % 7 + 7) % 7;
    return EpiWeek{serial - shift};
}

std::string week_label(const EpiWeek& week) {
    Date pivot = civil_from_days(week.start_serial + 3);
    int number = (day_of_year(pivot) - 1) / 7 + 1;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-W%02d", pivot.year, number);
    return buf;
}

std::optional<EpiWeek> parse_week_label(const std::string& label, const WeekRule& rule) {
    if (label.size() != 8 || label[4] != '-' || label[5] != 'W') return std::nullopt;
    for (int i : {0, 1, 2, 3, 6, 7})
        if (!std::isdigit(static_cast<unsigned char>(label[i]))) return std::nullopt;
    int year = std::stoi(label.substr(0, 4));
    int number = std::stoi(label.substr(6, 2));
    if (number < 1) return std::nullopt;

    // First week of the year: the week whose pivot falls on day 1..7.
    EpiWeek w = week_of(Date{year, 1, 1}, rule);
    for (int k = 0; k < 2 && civil_from_days(w.start_serial + 3).year != year; ++k)
        w = w.next();
    EpiWeek target{w.start_serial + 7L * (number - 1)};
    if (week_label(target) != label) return std::nullopt;
    return target;
}

}  // namespace epinet
