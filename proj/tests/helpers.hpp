#pragma once

#include <random>
#include <string>
#include <vector>

#include "sentibt/headlines.hpp"
#include "sentibt/series.hpp"

namespace sentibt::testing {

inline MonthlySeries make_series(MonthKey first, const std::vector<double>& values,
                                 const std::string& label = "series") {
    MonthlySeries s(label);
    MonthKey m = first;
    for (double v : values) {
        s.set(m, v);
        m = m.next();
    }
    return s;
}

inline HeadlineRecord make_headline(const Date& date, SentimentLabel sentiment,
                                    Topic topic = Topic::unlabeled,
                                    EventType event = EventType::unlabeled,
                                    const std::string& source = "wire") {
    HeadlineRecord h;
    h.date = date;
    h.source = source;
    h.text = "synthetic headline";
    h.sentiment = sentiment;
    h.topic = topic;
    h.event_type = event;
    return h;
}

/// n headlines with the given label spread across a month.
inline void add_headlines(std::vector<HeadlineRecord>& out, MonthKey month, int n,
                          SentimentLabel sentiment, Topic topic = Topic::unlabeled,
                          EventType event = EventType::unlabeled,
                          const std::string& source = "wire") {
    for (int i = 0; i < n; ++i) {
        int day = 1 + (i % days_in_month(month.year(), month.month()));
        out.push_back(
            make_headline(Date{month.year(), month.month(), day}, sentiment, topic, event, source));
    }
}

/// Deterministic returns in (-0.5, 0.5), never touching -1.
inline std::vector<double> random_returns(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> dist(-0.45, 0.5);
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(dist(rng));
    return out;
}

}  // namespace sentibt::testing
