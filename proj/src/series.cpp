#include "sentibt/series.hpp"

#include "sentibt/errors.hpp"

namespace sentibt {

double MonthlySeries::value(MonthKey month) const {
    auto it = entries_.find(month);
    if (it == entries_.end()) {
        throw ComputeError("series '" + label_ + "' has no value for " + month.str());
    }
    return it->second;
}

MonthKey MonthlySeries::first_month() const {
    if (entries_.empty()) throw ComputeError("series '" + label_ + "' is empty");
    return entries_.begin()->first;
}

MonthKey MonthlySeries::last_month() const {
    if (entries_.empty()) throw ComputeError("series '" + label_ + "' is empty");
    return entries_.rbegin()->first;
}

bool MonthlySeries::contiguous() const {
    if (entries_.empty()) return false;
    int expected = entries_.begin()->first.index();
    for (const auto& [month, _] : entries_) {
        if (month.index() != expected) return false;
        ++expected;
    }
    return true;
}

std::vector<MonthKey> MonthlySeries::months() const {
    std::vector<MonthKey> out;
    out.reserve(entries_.size());
    for (const auto& [month, _] : entries_) out.push_back(month);
    return out;
}

std::vector<double> MonthlySeries::values() const {
    std::vector<double> out;
    out.reserve(entries_.size());
    for (const auto& [_, v] : entries_) out.push_back(v);
    return out;
}

}  // namespace sentibt
