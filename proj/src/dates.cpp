#include "volwriter/dates.hpp"

#include "volwriter/errors.hpp"

#include <charconv>
#include <cstdio>

namespace volwriter {

Date parse_date(std::string_view text) {
    int y = 0, m = 0, d = 0;
    const char* p = text.data();
    const char* end = p + text.size();
    auto r1 = std::from_chars(p, end, y);
    if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != '-')
        throw DataError("malformed date: '" + std::string(text) + "'");
    auto r2 = std::from_chars(r1.ptr + 1, end, m);
    if (r2.ec != std::errc{} || r2.ptr == end || *r2.ptr != '-')
        throw DataError("malformed date: '" + std::string(text) + "'");
    auto r3 = std::from_chars(r2.ptr + 1, end, d);
    if (r3.ec != std::errc{} || r3.ptr != end)
        throw DataError("malformed date: '" + std::string(text) + "'");
    const Date date = std::chrono::year{y} / m / d;
    if (!date.ok())
        throw DataError("invalid calendar date: '" + std::string(text) + "'");
    return date;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(d.year()), unsigned(d.month()),
                  unsigned(d.day()));
    return buf;
}

std::string format_timestamp(const Timestamp& t) {
    return format_date(t.date) + " m" + std::to_string(t.minute);
}

} // namespace volwriter
