#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sentibt/evaluation.hpp"
#include "sentibt/exec.hpp"
#include "sentibt/sentiment.hpp"

namespace sentibt {

/// Per-month, per-topic sentiment label counts over a fixed headline slice
/// (optionally restricted by source and event type). Any topic subset's
/// monthly score is then a ratio of summed counts, so subset evaluation
/// never rescans headlines.
class TopicCountCache {
public:
    static TopicCountCache build(const std::vector<HeadlineRecord>& headlines,
                                 const std::set<std::string>& sources = {},
                                 const std::set<EventType>& event_types = {});

    /// Counts summed over the topics set in `mask` (bit i = topic_universe()[i]).
    MonthCounts month_counts(MonthKey month, std::uint16_t mask) const;

    /// Sparse monthly score for the subset; months with no matching headline
    /// are absent.
    MonthlySeries subset_scores(std::uint16_t mask) const;

    const std::vector<MonthKey>& months() const { return months_; }
    bool empty() const { return months_.empty(); }

private:
    std::vector<MonthKey> months_;
    // months_.size() x kTopicCount, row-major
    std::vector<MonthCounts> counts_;
};

std::uint16_t topic_mask(const std::set<Topic>& topics);
std::set<Topic> mask_topics(std::uint16_t mask);
std::string mask_label(std::uint16_t mask);  // "+"-joined topic names

/// Sum of C(n_topics, k) for k in [min_size, max_size].
std::uint64_t subset_candidate_count(int n_topics, int min_size, int max_size);

struct SubsetResult {
    std::uint16_t mask = 0;
    int subset_size = 0;
    int n_months = 0;  // months with at least one matching headline
    std::optional<StrategyReport> report;  // nullopt = insufficient data

    std::optional<double> sharpe() const {
        if (!report.has_value() || !report->sharpe.has_value()) return std::nullopt;
        return report->sharpe->sr;
    }
};

/// Portfolio over one topic subset: sentiment from matching headlines only,
/// months without a match excluded entirely, positions clipped to months
/// with a realized next return.
SubsetResult topic_portfolio(const TopicCountCache& cache, std::uint16_t mask,
                             const MonthlySeries& returns, double risk_free_monthly = 0.0);

/// Every subset with size in [min_size, max_size], ranked by Sharpe
/// descending; ties go to the smaller subset, then lexicographic topic
/// order. Undefined Sharpe ranks last.
std::vector<SubsetResult> enumerate_topic_subsets(
    const TopicCountCache& cache, const MonthlySeries& returns, int min_size, int max_size,
    double risk_free_monthly = 0.0, ExecutionMode mode = ExecutionMode::parallel);

/// Ranking predicate used for subset results (exposed for tests).
bool subset_result_better(const SubsetResult& a, const SubsetResult& b);

struct EventTypeReport {
    std::optional<StrategyReport> forward_looking;
    std::optional<StrategyReport> occurred;
    bool forward_looking_present = false;  // any such headline existed
    bool occurred_present = false;
    /// Optional per-topic split: reports per (topic, event type).
    std::map<Topic, std::pair<std::optional<StrategyReport>, std::optional<StrategyReport>>>
        per_topic;
};

EventTypeReport event_type_report(const std::vector<HeadlineRecord>& headlines,
                                  const MonthlySeries& returns, double risk_free_monthly = 0.0,
                                  bool per_topic = false);

/// (sr_other - sr_bench) / |sr_bench| * 100; nullopt when the benchmark is 0.
std::optional<double> improvement_pct(double sr_other, double sr_bench);

struct SourceTopicCell {
    std::optional<StrategyReport> report;
    std::optional<double> improvement;  // vs the source's all-headlines benchmark
};

struct SourceTopicMatrix {
    std::vector<std::string> sources;
    std::map<std::string, std::optional<StrategyReport>> benchmark;  // per source
    std::map<std::string, std::map<Topic, SourceTopicCell>> cells;
};

SourceTopicMatrix source_comparison(const std::vector<HeadlineRecord>& headlines,
                                    const MonthlySeries& returns,
                                    const std::vector<std::string>& sources,
                                    double risk_free_monthly = 0.0);

}  // namespace sentibt
