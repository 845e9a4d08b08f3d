#include "sentibt/topics.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "sentibt/errors.hpp"
#include "sentibt/strategy.hpp"

namespace sentibt {

TopicCountCache TopicCountCache::build(const std::vector<HeadlineRecord>& headlines,
                                       const std::set<std::string>& sources,
                                       const std::set<EventType>& event_types) {
    HeadlineFilter filter;
    filter.sources = sources;
    filter.event_types = event_types;

    std::map<MonthKey, std::array<MonthCounts, kTopicCount>> by_month;
    for (const auto& h : headlines) {
        if (h.topic == Topic::unlabeled) continue;  // subsets address labeled rows only
        if (!filter.matches(h)) continue;
        MonthCounts& c = by_month[h.month()][static_cast<std::size_t>(h.topic)];
        switch (h.sentiment) {
            case SentimentLabel::positive: ++c.pos; break;
            case SentimentLabel::neutral: ++c.neu; break;
            case SentimentLabel::negative: ++c.neg; break;
        }
    }

    TopicCountCache cache;
    cache.months_.reserve(by_month.size());
    cache.counts_.reserve(by_month.size() * kTopicCount);
    for (const auto& [month, row] : by_month) {
        cache.months_.push_back(month);
        for (const auto& c : row) cache.counts_.push_back(c);
    }
    return cache;
}

MonthCounts TopicCountCache::month_counts(MonthKey month, std::uint16_t mask) const {
    auto it = std::lower_bound(months_.begin(), months_.end(), month);
    if (it == months_.end() || *it != month) return {};
    std::size_t row = static_cast<std::size_t>(it - months_.begin()) * kTopicCount;
    MonthCounts total;
    for (int t = 0; t < kTopicCount; ++t) {
        if (mask & (std::uint16_t{1} << t)) total += counts_[row + t];
    }
    return total;
}

MonthlySeries TopicCountCache::subset_scores(std::uint16_t mask) const {
    MonthlySeries out("sentiment");
    for (std::size_t i = 0; i < months_.size(); ++i) {
        MonthCounts total;
        std::size_t row = i * kTopicCount;
        for (int t = 0; t < kTopicCount; ++t) {
            if (mask & (std::uint16_t{1} << t)) total += counts_[row + t];
        }
        if (total.total() > 0) out.set(months_[i], total.score());
    }
    return out;
}

std::uint16_t topic_mask(const std::set<Topic>& topics) {
    std::uint16_t mask = 0;
    for (Topic t : topics) {
        if (t == Topic::unlabeled) throw ComputeError("subsets cannot include unlabeled");
        mask |= std::uint16_t{1} << static_cast<int>(t);
    }
    return mask;
}

std::set<Topic> mask_topics(std::uint16_t mask) {
    std::set<Topic> out;
    for (int t = 0; t < kTopicCount; ++t) {
        if (mask & (std::uint16_t{1} << t)) out.insert(static_cast<Topic>(t));
    }
    return out;
}

std::string mask_label(std::uint16_t mask) {
    std::string out;
    for (int t = 0; t < kTopicCount; ++t) {
        if (mask & (std::uint16_t{1} << t)) {
            if (!out.empty()) out += '+';
            out += topic_name(static_cast<Topic>(t));
        }
    }
    return out;
}

std::uint64_t subset_candidate_count(int n_topics, int min_size, int max_size) {
    if (n_topics < 1 || min_size < 1 || min_size > max_size || max_size > n_topics) {
        throw ComputeError("invalid subset size range");
    }
    std::uint64_t total = 0;
    for (int k = min_size; k <= max_size; ++k) {
        std::uint64_t c = 1;
        for (int j = 1; j <= k; ++j) {
            c = c * static_cast<std::uint64_t>(n_topics - j + 1) / static_cast<std::uint64_t>(j);
        }
        total += c;
    }
    return total;
}

SubsetResult topic_portfolio(const TopicCountCache& cache, std::uint16_t mask,
                             const MonthlySeries& returns, double risk_free_monthly) {
    if (mask == 0) throw ComputeError("empty topic subset");
    SubsetResult result;
    result.mask = mask;
    result.subset_size = static_cast<int>(mask_topics(mask).size());

    MonthlySeries scores = cache.subset_scores(mask);
    result.n_months = static_cast<int>(scores.size());
    if (scores.empty()) return result;  // insufficient data

    SignalSeries signals = clip_to_returns(sentiment_signal(scores), returns);
    if (signals.empty()) return result;
    PortfolioPath path = simulate(signals, returns);
    result.report = build_report(path, returns, risk_free_monthly);
    return result;
}

namespace {

// Lexicographic order of subsets viewed as ascending topic-index sequences:
// the first index present in exactly one subset decides.
int lex_compare_masks(std::uint16_t a, std::uint16_t b) {
    for (int t = 0; t < kTopicCount; ++t) {
        bool in_a = a & (std::uint16_t{1} << t);
        bool in_b = b & (std::uint16_t{1} << t);
        if (in_a != in_b) return in_a ? -1 : 1;
    }
    return 0;
}

}  // namespace

bool subset_result_better(const SubsetResult& a, const SubsetResult& b) {
    auto sa = a.sharpe();
    auto sb = b.sharpe();
    if (sa.has_value() != sb.has_value()) return sa.has_value();
    if (sa.has_value() && *sa != *sb) return *sa > *sb;
    if (a.subset_size != b.subset_size) return a.subset_size < b.subset_size;
    return lex_compare_masks(a.mask, b.mask) < 0;
}

std::vector<SubsetResult> enumerate_topic_subsets(const TopicCountCache& cache,
                                                  const MonthlySeries& returns, int min_size,
                                                  int max_size, double risk_free_monthly,
                                                  ExecutionMode mode) {
    (void)subset_candidate_count(kTopicCount, min_size, max_size);  // validates the range

    std::vector<std::uint16_t> masks;
    for (std::uint16_t mask = 1; mask < (1u << kTopicCount); ++mask) {
        int size = std::popcount(mask);
        if (size >= min_size && size <= max_size) masks.push_back(mask);
    }

    std::vector<SubsetResult> results(masks.size());
    std::vector<std::string> errors(masks.size());
    auto evaluate = [&](std::size_t i) {
        try {
            results[i] = topic_portfolio(cache, masks[i], returns, risk_free_monthly);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };

    if (mode == ExecutionMode::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
        for (long long i = 0; i < static_cast<long long>(masks.size()); ++i) {
            evaluate(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < masks.size(); ++i) evaluate(i);
    }
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i].empty()) {
            throw ComputeError("subset " + mask_label(masks[i]) + " failed: " + errors[i]);
        }
    }

    std::sort(results.begin(), results.end(), subset_result_better);
    return results;
}

namespace {

std::optional<StrategyReport> filtered_portfolio(const std::vector<HeadlineRecord>& headlines,
                                                 const HeadlineFilter& filter,
                                                 const MonthlySeries& returns,
                                                 double risk_free_monthly) {
    MonthlySeries scores = monthly_score(headlines, filter);
    if (scores.empty()) return std::nullopt;
    SignalSeries signals = clip_to_returns(sentiment_signal(scores), returns);
    if (signals.empty()) return std::nullopt;
    PortfolioPath path = simulate(signals, returns);
    return build_report(path, returns, risk_free_monthly);
}

}  // namespace

EventTypeReport event_type_report(const std::vector<HeadlineRecord>& headlines,
                                  const MonthlySeries& returns, double risk_free_monthly,
                                  bool per_topic) {
    EventTypeReport report;
    for (const auto& h : headlines) {
        if (h.event_type == EventType::forward_looking) report.forward_looking_present = true;
        if (h.event_type == EventType::occurred) report.occurred_present = true;
    }

    HeadlineFilter fwd;
    fwd.event_types = {EventType::forward_looking};
    HeadlineFilter occ;
    occ.event_types = {EventType::occurred};
    if (report.forward_looking_present) {
        report.forward_looking = filtered_portfolio(headlines, fwd, returns, risk_free_monthly);
    }
    if (report.occurred_present) {
        report.occurred = filtered_portfolio(headlines, occ, returns, risk_free_monthly);
    }

    if (per_topic) {
        for (Topic t : topic_universe()) {
            HeadlineFilter ft = fwd;
            ft.topics = {t};
            HeadlineFilter ot = occ;
            ot.topics = {t};
            auto f = filtered_portfolio(headlines, ft, returns, risk_free_monthly);
            auto o = filtered_portfolio(headlines, ot, returns, risk_free_monthly);
            if (f.has_value() || o.has_value()) {
                report.per_topic[t] = {std::move(f), std::move(o)};
            }
        }
    }
    return report;
}

std::optional<double> improvement_pct(double sr_other, double sr_bench) {
    if (sr_bench == 0.0) return std::nullopt;
    return (sr_other - sr_bench) / std::abs(sr_bench) * 100.0;
}

SourceTopicMatrix source_comparison(const std::vector<HeadlineRecord>& headlines,
                                    const MonthlySeries& returns,
                                    const std::vector<std::string>& sources,
                                    double risk_free_monthly) {
    if (sources.empty()) throw ComputeError("source comparison needs at least one source");

    SourceTopicMatrix matrix;
    matrix.sources = sources;
    for (const auto& source : sources) {
        HeadlineFilter all;
        all.sources = {source};
        auto bench = filtered_portfolio(headlines, all, returns, risk_free_monthly);
        matrix.benchmark[source] = bench;

        std::optional<double> bench_sr;
        if (bench.has_value() && bench->sharpe.has_value()) bench_sr = bench->sharpe->sr;

        for (Topic t : topic_universe()) {
            HeadlineFilter f = all;
            f.topics = {t};
            SourceTopicCell cell;
            cell.report = filtered_portfolio(headlines, f, returns, risk_free_monthly);
            if (cell.report.has_value() && cell.report->sharpe.has_value() &&
                bench_sr.has_value()) {
                cell.improvement = improvement_pct(cell.report->sharpe->sr, *bench_sr);
            }
            matrix.cells[source][t] = std::move(cell);
        }
    }
    return matrix;
}

}  // namespace sentibt
