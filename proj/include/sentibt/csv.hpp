#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace sentibt {

/// Parsed CSV content. `row_lines[i]` is the 1-based line number on which
/// data row i started, for error messages.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> row_lines;
    std::map<std::string, std::size_t> columns;

    bool has_column(const std::string& name) const { return columns.count(name) != 0; }

    /// Index of a required column; throws DataError when absent.
    std::size_t column(const std::string& name, const std::string& origin) const;
};

/// Parse CSV text. Handles quoted fields, embedded commas/quotes/newlines,
/// and both \n and \r\n line endings. `origin` labels error messages.
CsvTable parse_csv(const std::string& text, const std::string& origin);

/// Read and parse a CSV file; throws DataError when unreadable.
CsvTable read_csv(const std::string& path);

/// Quote a field when it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

}  // namespace sentibt
