#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sentibt/calendar.hpp"
#include "sentibt/headlines.hpp"
#include "sentibt/series.hpp"

namespace sentibt {

/// One daily row of the price/feature table. Values are optional until
/// imputation; an empty CSV cell is missing.
struct DailyBar {
    Date date;
    std::optional<double> close;
    std::vector<std::optional<double>> features;  // aligned with PriceTable::feature_names
};

struct PriceSchema {
    std::string date_column = "date";
    std::string close_column = "close";
};

struct PriceTable {
    std::vector<std::string> feature_names;  // file order, date/close excluded
    std::vector<DailyBar> bars;              // sorted by date
};

/// Aggregation rule when collapsing a month of daily values.
enum class Aggregation { last, mean, first };

Aggregation parse_aggregation(const std::string& s);

struct MonthlyTable {
    MonthlySeries close;
    std::map<std::string, MonthlySeries> features;
};

/// Load the daily table: rows sorted by date, duplicate dates rejected,
/// malformed cells reported with their line number.
PriceTable load_prices(const std::string& path, const PriceSchema& schema = {});
PriceTable parse_prices(const std::string& text, const std::string& origin,
                        const PriceSchema& schema = {});

/// Forward-fill then backward-fill every column in place.
/// A column with no values at all is an error naming the column.
void impute_missing(PriceTable& table);

/// Collapse daily bars into one value per month. Requires imputed input.
MonthlyTable resample_monthly(const PriceTable& table, Aggregation close_agg = Aggregation::last,
                              Aggregation feature_agg = Aggregation::mean);

/// R_t = P_t / P_{t-1} - 1, keyed to the later month. Months must be
/// contiguous; a gap is an error.
MonthlySeries simple_returns(const MonthlySeries& prices);

/// Load the labeled headline table (columns date, source, text, sentiment,
/// optional topic and event_type).
std::vector<HeadlineRecord> load_headlines(const std::string& path);
std::vector<HeadlineRecord> parse_headlines(const std::string& text, const std::string& origin);

}  // namespace sentibt
