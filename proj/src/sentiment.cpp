#include "sentibt/sentiment.hpp"

namespace sentibt {

int label_to_score(SentimentLabel label) {
    switch (label) {
        case SentimentLabel::positive: return 1;
        case SentimentLabel::neutral: return 0;
        case SentimentLabel::negative: return -1;
    }
    return 0;
}

std::vector<HeadlineRecord> filter_headlines(const std::vector<HeadlineRecord>& headlines,
                                             const HeadlineFilter& filter) {
    std::vector<HeadlineRecord> out;
    for (const auto& h : headlines) {
        if (filter.matches(h)) out.push_back(h);
    }
    return out;
}

MonthlyCounts count_by_month(const std::vector<HeadlineRecord>& headlines,
                             const HeadlineFilter& filter) {
    MonthlyCounts counts;
    for (const auto& h : headlines) {
        if (!filter.matches(h)) continue;
        MonthCounts& c = counts[h.month()];
        switch (h.sentiment) {
            case SentimentLabel::positive: ++c.pos; break;
            case SentimentLabel::neutral: ++c.neu; break;
            case SentimentLabel::negative: ++c.neg; break;
        }
    }
    return counts;
}

MonthlySeries monthly_score(const std::vector<HeadlineRecord>& headlines,
                            const HeadlineFilter& filter) {
    MonthlySeries out("sentiment");
    for (const auto& [month, counts] : count_by_month(headlines, filter)) {
        out.set(month, counts.score());
    }
    return out;
}

MonthlySeries monthly_headline_count(const std::vector<HeadlineRecord>& headlines,
                                     const HeadlineFilter& filter) {
    MonthlySeries out("n_headlines");
    for (const auto& [month, counts] : count_by_month(headlines, filter)) {
        out.set(month, static_cast<double>(counts.total()));
    }
    return out;
}

MonthlySeries fill_empty_months(const MonthlySeries& series, MonthKey first, MonthKey last,
                                double fill) {
    MonthlySeries out(series.label());
    for (MonthKey m = first; m <= last; m = m.next()) {
        auto v = series.at(m);
        out.set(m, v.value_or(fill));
    }
    return out;
}

}  // namespace sentibt
