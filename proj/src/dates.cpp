#include "dd/dates.hpp"

#include <cstdio>

namespace dd {

std::string iso_date(DayIndex d) {
    const CivilDate c = civil_from_days(d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", c.year, c.month, c.day);
    return buf;
}

DayIndex parse_iso_date(const std::string& s) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3 || s.size() != 10 ||
        m < 1 || m > 12 || d < 1 || d > 31)
        throw std::invalid_argument("bad date: " + s);
    return days_from_civil(y, m, d);
}

}  // namespace dd
