#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dd {

inline constexpr std::int64_t kSecondsPerDay = 86400;

// Unix timestamp, seconds since epoch, UTC.
using Timestamp = std::int64_t;

// Days since 1970-01-01, UTC calendar day.
using DayIndex = std::int64_t;

constexpr DayIndex day_of(Timestamp t) noexcept {
    return t >= 0 ? t / kSecondsPerDay : (t - kSecondsPerDay + 1) / kSecondsPerDay;
}

constexpr Timestamp day_start(DayIndex d) noexcept { return d * kSecondsPerDay; }

// civil <-> day-count conversions (proleptic Gregorian)
constexpr DayIndex days_from_civil(int y, unsigned m, unsigned d) noexcept {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<DayIndex>(era) * 146097 + static_cast<DayIndex>(doe) - 719468;
}

struct CivilDate {
    int year;
    unsigned month;
    unsigned day;
};

constexpr CivilDate civil_from_days(DayIndex z) noexcept {
    z += 719468;
    const DayIndex era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return {y + (m <= 2), m, d};
}

std::string iso_date(DayIndex d);

// Parses YYYY-MM-DD. Throws std::invalid_argument on malformed input.
DayIndex parse_iso_date(const std::string& s);

}  // namespace dd
