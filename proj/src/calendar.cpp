#include "sentibt/calendar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "sentibt/errors.hpp"

namespace sentibt {

namespace {

bool parse_int_field(std::string_view text, int& out) {
    if (text.empty()) return false;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr int days[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return days[month - 1];
}

Date parse_date(std::string_view text) {
    Date d;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
        !parse_int_field(text.substr(0, 4), d.year) ||
        !parse_int_field(text.substr(5, 2), d.month) ||
        !parse_int_field(text.substr(8, 2), d.day)) {
        throw DataError("malformed date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    }
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month)) {
        throw DataError("impossible calendar date '" + std::string(text) + "'");
    }
    return d;
}

std::string to_string(const Date& d) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

MonthKey::MonthKey(int year, int month) {
    if (month < 1 || month > 12) {
        throw DataError("month out of range: " + std::to_string(month));
    }
    index_ = year * 12 + (month - 1);
}

MonthKey MonthKey::parse(std::string_view text) {
    int y = 0;
    int m = 0;
    if (text.size() != 7 || text[4] != '-' || !parse_int_field(text.substr(0, 4), y) ||
        !parse_int_field(text.substr(5, 2), m)) {
        throw DataError("malformed month '" + std::string(text) + "' (expected YYYY-MM)");
    }
    return MonthKey(y, m);
}

MonthKey MonthKey::next() const {
    MonthKey m;
    m.index_ = index_ + 1;
    return m;
}

MonthKey MonthKey::prev() const {
    MonthKey m;
    m.index_ = index_ - 1;
    return m;
}

std::string MonthKey::str() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year(), month());
    return buf;
}

}  // namespace sentibt
