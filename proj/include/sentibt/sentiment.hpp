#pragma once

#include <map>
#include <vector>

#include "sentibt/headlines.hpp"
#include "sentibt/series.hpp"

namespace sentibt {

/// positive -> +1, neutral -> 0, negative -> -1
int label_to_score(SentimentLabel label);

struct MonthCounts {
    int pos = 0;
    int neu = 0;
    int neg = 0;

    int total() const { return pos + neu + neg; }
    double score() const { return static_cast<double>(pos - neg) / static_cast<double>(total()); }

    MonthCounts& operator+=(const MonthCounts& o) {
        pos += o.pos;
        neu += o.neu;
        neg += o.neg;
        return *this;
    }
};

using MonthlyCounts = std::map<MonthKey, MonthCounts>;

std::vector<HeadlineRecord> filter_headlines(const std::vector<HeadlineRecord>& headlines,
                                             const HeadlineFilter& filter);

MonthlyCounts count_by_month(const std::vector<HeadlineRecord>& headlines,
                             const HeadlineFilter& filter = {});

/// Monthly sentiment score (pos - neg) / total over matching headlines.
/// Months with no match are absent from the result (sparse).
MonthlySeries monthly_score(const std::vector<HeadlineRecord>& headlines,
                            const HeadlineFilter& filter = {});

/// Headline count per scored month, aligned with monthly_score.
MonthlySeries monthly_headline_count(const std::vector<HeadlineRecord>& headlines,
                                     const HeadlineFilter& filter = {});

/// Coerce missing months in [first, last] to `fill` (used when empty months
/// should read as neutral instead of being excluded).
MonthlySeries fill_empty_months(const MonthlySeries& series, MonthKey first, MonthKey last,
                                double fill = 0.0);

}  // namespace sentibt
