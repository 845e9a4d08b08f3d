#include "sentibt/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sentibt/csv.hpp"
#include "sentibt/errors.hpp"

namespace sentibt {

namespace {

double parse_number(const std::string& cell, const std::string& origin, std::size_t line,
                    const std::string& column) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        throw_parse_error(origin, line, "non-numeric value '" + cell + "' in column '" + column + "'");
    }
    return value;
}

std::optional<double> parse_optional_number(const std::string& cell, const std::string& origin,
                                            std::size_t line, const std::string& column) {
    if (cell.empty()) return std::nullopt;
    return parse_number(cell, origin, line, column);
}

Date parse_date_cell(const std::string& cell, const std::string& origin, std::size_t line) {
    try {
        return parse_date(cell);
    } catch (const DataError& e) {
        throw_parse_error(origin, line, e.what());
    }
}

void fill_column(std::vector<std::optional<double>*> cells, const std::string& column) {
    std::optional<double> last;
    for (auto* cell : cells) {
        if (cell->has_value()) last = *cell;
        else if (last.has_value()) *cell = last;
    }
    if (!last.has_value()) {
        throw DataError("column '" + column + "' has no values to impute from");
    }
    last.reset();
    for (auto it = cells.rbegin(); it != cells.rend(); ++it) {
        if ((*it)->has_value()) last = **it;
        else **it = last;
    }
}

double aggregate(const std::vector<double>& values, Aggregation agg) {
    switch (agg) {
        case Aggregation::last: return values.back();
        case Aggregation::first: return values.front();
        case Aggregation::mean: {
            double sum = 0.0;
            for (double v : values) sum += v;
            return sum / static_cast<double>(values.size());
        }
    }
    return values.back();
}

}  // namespace

Aggregation parse_aggregation(const std::string& s) {
    if (s == "last") return Aggregation::last;
    if (s == "mean") return Aggregation::mean;
    if (s == "first") return Aggregation::first;
    throw UsageError("unknown aggregation '" + s + "' (expected last|mean|first)");
}

PriceTable parse_prices(const std::string& text, const std::string& origin,
                        const PriceSchema& schema) {
    CsvTable csv = parse_csv(text, origin);
    std::size_t date_col = csv.column(schema.date_column, origin);
    std::size_t close_col = csv.column(schema.close_column, origin);

    PriceTable table;
    std::vector<std::size_t> feature_cols;
    for (std::size_t i = 0; i < csv.header.size(); ++i) {
        if (i == date_col || i == close_col) continue;
        table.feature_names.push_back(csv.header[i]);
        feature_cols.push_back(i);
    }

    table.bars.reserve(csv.rows.size());
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        std::size_t line = csv.row_lines[r];
        DailyBar bar;
        bar.date = parse_date_cell(row[date_col], origin, line);
        bar.close = parse_optional_number(row[close_col], origin, line, schema.close_column);
        bar.features.reserve(feature_cols.size());
        for (std::size_t f = 0; f < feature_cols.size(); ++f) {
            bar.features.push_back(
                parse_optional_number(row[feature_cols[f]], origin, line, table.feature_names[f]));
        }
        table.bars.push_back(std::move(bar));
    }

    std::stable_sort(table.bars.begin(), table.bars.end(),
                     [](const DailyBar& a, const DailyBar& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < table.bars.size(); ++i) {
        if (table.bars[i].date == table.bars[i - 1].date) {
            // Find the duplicate's source line for the message.
            const Date& d = table.bars[i].date;
            std::size_t seen = 0;
            for (std::size_t r = 0; r < csv.rows.size(); ++r) {
                if (parse_date(csv.rows[r][date_col]) == d && ++seen == 2) {
                    throw_parse_error(origin, csv.row_lines[r], "duplicate date " + to_string(d));
                }
            }
            throw DataError(origin + ": duplicate date " + to_string(d));
        }
    }
    return table;
}

PriceTable load_prices(const std::string& path, const PriceSchema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_prices(buf.str(), path, schema);
}

void impute_missing(PriceTable& table) {
    if (table.bars.empty()) return;

    std::vector<std::optional<double>*> close_cells;
    close_cells.reserve(table.bars.size());
    for (auto& bar : table.bars) close_cells.push_back(&bar.close);
    fill_column(close_cells, "close");
    for (const auto& bar : table.bars) {
        if (*bar.close <= 0.0) {
            throw DataError("nonpositive close " + std::to_string(*bar.close) + " on " +
                            to_string(bar.date));
        }
    }

    for (std::size_t f = 0; f < table.feature_names.size(); ++f) {
        std::vector<std::optional<double>*> cells;
        cells.reserve(table.bars.size());
        for (auto& bar : table.bars) cells.push_back(&bar.features[f]);
        fill_column(cells, table.feature_names[f]);
    }
}

MonthlyTable resample_monthly(const PriceTable& table, Aggregation close_agg,
                              Aggregation feature_agg) {
    MonthlyTable out;
    out.close.set_label("close");
    for (const auto& name : table.feature_names) {
        out.features.emplace(name, MonthlySeries(name));
    }
    if (table.bars.empty()) return out;

    std::map<MonthKey, std::vector<double>> close_by_month;
    std::map<MonthKey, std::vector<std::vector<double>>> features_by_month;
    for (const auto& bar : table.bars) {
        MonthKey m = MonthKey::of(bar.date);
        if (!bar.close.has_value()) {
            throw ComputeError("resample requires imputed input (missing close on " +
                               to_string(bar.date) + ")");
        }
        close_by_month[m].push_back(*bar.close);
        auto& cols = features_by_month[m];
        cols.resize(table.feature_names.size());
        for (std::size_t f = 0; f < bar.features.size(); ++f) {
            if (!bar.features[f].has_value()) {
                throw ComputeError("resample requires imputed input (missing " +
                                   table.feature_names[f] + " on " + to_string(bar.date) + ")");
            }
            cols[f].push_back(*bar.features[f]);
        }
    }

    for (const auto& [month, values] : close_by_month) {
        out.close.set(month, aggregate(values, close_agg));
    }
    for (const auto& [month, cols] : features_by_month) {
        for (std::size_t f = 0; f < table.feature_names.size(); ++f) {
            out.features.at(table.feature_names[f]).set(month, aggregate(cols[f], feature_agg));
        }
    }
    return out;
}

MonthlySeries simple_returns(const MonthlySeries& prices) {
    if (prices.size() < 2) {
        throw ComputeError("returns require at least 2 months, got " +
                           std::to_string(prices.size()));
    }
    if (!prices.contiguous()) {
        throw ComputeError("returns require contiguous months; series '" + prices.label() +
                           "' has gaps");
    }
    MonthlySeries out("returns");
    auto it = prices.entries().begin();
    double prev = it->second;
    for (++it; it != prices.entries().end(); ++it) {
        if (prev == 0.0) {
            throw ComputeError("zero price before " + it->first.str() + " breaks return definition");
        }
        out.set(it->first, it->second / prev - 1.0);
        prev = it->second;
    }
    return out;
}

std::vector<HeadlineRecord> parse_headlines(const std::string& text, const std::string& origin) {
    CsvTable csv = parse_csv(text, origin);
    std::size_t date_col = csv.column("date", origin);
    std::size_t source_col = csv.column("source", origin);
    std::size_t text_col = csv.column("text", origin);
    std::size_t sent_col = csv.column("sentiment", origin);
    bool has_topic = csv.has_column("topic");
    bool has_event = csv.has_column("event_type");
    std::size_t topic_col = has_topic ? csv.columns.at("topic") : 0;
    std::size_t event_col = has_event ? csv.columns.at("event_type") : 0;

    std::vector<HeadlineRecord> out;
    out.reserve(csv.rows.size());
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        std::size_t line = csv.row_lines[r];
        HeadlineRecord rec;
        rec.date = parse_date_cell(row[date_col], origin, line);
        rec.source = row[source_col];
        rec.text = row[text_col];
        try {
            rec.sentiment = parse_sentiment(row[sent_col]);
            rec.topic = has_topic ? parse_topic(row[topic_col]) : Topic::unlabeled;
            rec.event_type = has_event ? parse_event_type(row[event_col]) : EventType::unlabeled;
        } catch (const DataError& e) {
            throw_parse_error(origin, line, e.what());
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<HeadlineRecord> load_headlines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_headlines(buf.str(), path);
}

}  // namespace sentibt
