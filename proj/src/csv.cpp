#include "sentibt/csv.hpp"

#include <fstream>
#include <sstream>

#include "sentibt/errors.hpp"

namespace sentibt {

std::size_t CsvTable::column(const std::string& name, const std::string& origin) const {
    auto it = columns.find(name);
    if (it == columns.end()) {
        throw DataError(origin + ": missing required column '" + name + "'");
    }
    return it->second;
}

namespace {

// One record, possibly spanning multiple physical lines inside quotes.
// Returns false at end of input. `line` tracks the current 1-based line.
bool next_record(const std::string& text, std::size_t& pos, std::size_t& line,
                 const std::string& origin, std::vector<std::string>& fields,
                 std::size_t& record_line) {
    const std::size_t n = text.size();
    if (pos >= n) return false;

    record_line = line;
    fields.clear();
    std::string field;
    bool in_quotes = false;

    while (pos < n) {
        char c = text[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < n && text[pos + 1] == '"') {
                    field += '"';
                    pos += 2;
                } else {
                    in_quotes = false;
                    ++pos;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
                ++pos;
            }
        } else if (c == '"') {
            if (!field.empty()) {
                throw_parse_error(origin, line, "quote inside unquoted field");
            }
            in_quotes = true;
            ++pos;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            ++pos;
        } else if (c == '\r' && pos + 1 < n && text[pos + 1] == '\n') {
            pos += 2;
            ++line;
            fields.push_back(std::move(field));
            return true;
        } else if (c == '\n') {
            ++pos;
            ++line;
            fields.push_back(std::move(field));
            return true;
        } else {
            field += c;
            ++pos;
        }
    }
    if (in_quotes) {
        throw_parse_error(origin, record_line, "unterminated quoted field");
    }
    fields.push_back(std::move(field));
    return true;
}

bool record_is_blank(const std::vector<std::string>& fields) {
    return fields.size() == 1 && fields[0].empty();
}

}  // namespace

CsvTable parse_csv(const std::string& text, const std::string& origin) {
    CsvTable table;
    std::size_t pos = 0;
    std::size_t line = 1;
    std::vector<std::string> fields;
    std::size_t record_line = 0;

    if (!next_record(text, pos, line, origin, fields, record_line) || record_is_blank(fields)) {
        throw DataError(origin + ": empty file");
    }
    table.header = fields;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (!table.columns.emplace(table.header[i], i).second) {
            throw DataError(origin + ": duplicate column '" + table.header[i] + "'");
        }
    }

    while (next_record(text, pos, line, origin, fields, record_line)) {
        if (record_is_blank(fields)) continue;
        if (fields.size() != table.header.size()) {
            throw_parse_error(origin, record_line,
                              "expected " + std::to_string(table.header.size()) +
                                  " fields, got " + std::to_string(fields.size()));
        }
        table.rows.push_back(fields);
        table.row_lines.push_back(record_line);
    }
    return table;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path);
}

std::string csv_escape(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace sentibt
