#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sentibt/calendar.hpp"

namespace sentibt {

/// Ordered month -> value map. Gaps are allowed and a missing month is
/// distinguishable from a stored 0 (absence of the key).
class MonthlySeries {
public:
    MonthlySeries() = default;
    explicit MonthlySeries(std::string label) : label_(std::move(label)) {}

    void set(MonthKey month, double value) { entries_[month] = value; }
    bool has(MonthKey month) const { return entries_.count(month) != 0; }

    std::optional<double> at(MonthKey month) const {
        auto it = entries_.find(month);
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    /// Value for a month that must be present.
    double value(MonthKey month) const;

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    MonthKey first_month() const;
    MonthKey last_month() const;

    /// True when every month between first and last is present (and non-empty).
    bool contiguous() const;

    const std::map<MonthKey, double>& entries() const { return entries_; }
    std::vector<MonthKey> months() const;
    std::vector<double> values() const;

    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

private:
    std::string label_;
    std::map<MonthKey, double> entries_;
};

}  // namespace sentibt
