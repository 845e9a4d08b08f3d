#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "sentibt/evaluation.hpp"
#include "sentibt/forecast.hpp"
#include "sentibt/regimes.hpp"
#include "sentibt/topics.hpp"

namespace sentibt {

using ordered_json = nlohmann::ordered_json;

/// Write via a temp file plus rename so a failed run never leaves a
/// truncated file behind.
void write_file_atomic(const std::string& path, const std::string& content);

/// Fixed-precision decimal, locale-independent.
std::string fmt_fixed(double v, int precision);

ordered_json report_json(const StrategyReport& report);
ordered_json report_json_or_marker(const std::optional<StrategyReport>& report);

std::string portfolio_csv(const PortfolioPath& path);
std::string plot_tsv(const PortfolioPath& path, const MonthlySeries& prices);

std::string sentiment_csv(const MonthlySeries& scores, const MonthlySeries& counts);

std::string regime_csv(const RegimePartition& partition);
ordered_json regime_report_json(const RegimePartition& partition,
                                const std::map<std::string, RegimeReport>& by_strategy);
std::string regime_table_csv(const std::map<std::string, RegimeReport>& by_strategy);

std::string subsets_csv(const std::vector<SubsetResult>& results);
ordered_json event_type_json(const EventTypeReport& report);
std::string source_matrix_csv(const SourceTopicMatrix& matrix);

std::string grid_csv(const GridResult& result);

}  // namespace sentibt
