#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace sentibt {

/// Validated Gregorian calendar day.
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..days_in_month

    auto operator<=>(const Date&) const = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);

/// Parses "YYYY-MM-DD". Throws DataError on malformed or impossible dates.
Date parse_date(std::string_view text);
std::string to_string(const Date& d);

/// A calendar month on a contiguous integer axis, so that months are
/// adjacent exactly when their indices differ by one.
class MonthKey {
public:
    MonthKey() = default;
    MonthKey(int year, int month);

    static MonthKey parse(std::string_view text);  // "YYYY-MM"
    static MonthKey of(const Date& d) { return MonthKey(d.year, d.month); }
    static MonthKey from_index(int index) {
        MonthKey m;
        m.index_ = index;
        return m;
    }

    int year() const { return index_ >= 0 ? index_ / 12 : -((-index_ + 11) / 12); }
    int month() const { return index_ - year() * 12 + 1; }
    int index() const { return index_; }

    MonthKey next() const;
    MonthKey prev() const;

    std::string str() const;  // "YYYY-MM"

    auto operator<=>(const MonthKey&) const = default;

private:
    int index_ = 0;  // year * 12 + (month - 1)
};

/// Signed month distance b - a.
inline int months_between(MonthKey a, MonthKey b) { return b.index() - a.index(); }

}  // namespace sentibt
