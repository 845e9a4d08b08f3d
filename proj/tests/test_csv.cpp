#include <doctest.h>

#include "sentibt/csv.hpp"
#include "sentibt/errors.hpp"

using namespace sentibt;

TEST_CASE("basic csv parsing") {
    CsvTable t = parse_csv("a,b,c\n1,2,3\n4,5,6\n", "mem");
    CHECK(t.header == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0] == std::vector<std::string>{"1", "2", "3"});
    CHECK(t.rows[1] == std::vector<std::string>{"4", "5", "6"});
    CHECK(t.row_lines == std::vector<std::size_t>{2, 3});
    CHECK(t.column("b", "mem") == 1);
    CHECK_THROWS_AS(t.column("zzz", "mem"), DataError);
}

TEST_CASE("quoted fields with commas, quotes, and newlines") {
    CsvTable t = parse_csv("x,y\n\"a,b\",\"say \"\"hi\"\"\"\n\"line1\nline2\",z\n", "mem");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][0] == "a,b");
    CHECK(t.rows[0][1] == "say \"hi\"");
    CHECK(t.rows[1][0] == "line1\nline2");
    // The record after an embedded newline still reports its starting line.
    CHECK(t.row_lines[1] == 3);
}

TEST_CASE("crlf endings and trailing newline handling") {
    CsvTable crlf = parse_csv("a,b\r\n1,2\r\n", "mem");
    CHECK(crlf.rows.size() == 1);
    CHECK(crlf.rows[0][1] == "2");
    CsvTable no_trailing = parse_csv("a,b\n1,2", "mem");
    CHECK(no_trailing.rows.size() == 1);
}

TEST_CASE("csv structural errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_csv("a,b\n1\n", "f.csv"),
                         "f.csv:2: expected 2 fields, got 1", DataError);
    CHECK_THROWS_WITH_AS(parse_csv("a,b\n1,2,3\n", "f.csv"),
                         "f.csv:2: expected 2 fields, got 3", DataError);
    CHECK_THROWS_AS(parse_csv("", "f.csv"), DataError);
    CHECK_THROWS_AS(parse_csv("a,a\n1,2\n", "f.csv"), DataError);
    CHECK_THROWS_AS(parse_csv("a,b\n\"unterminated,2\n", "f.csv"), DataError);
    CHECK_THROWS_AS(parse_csv("a,b\nbad\"quote,2\n", "f.csv"), DataError);
}

TEST_CASE("blank lines are skipped") {
    CsvTable t = parse_csv("a,b\n1,2\n\n3,4\n", "mem");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[1][0] == "3");
    CHECK(t.row_lines[1] == 4);
}

TEST_CASE("csv_escape quotes only when needed") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
}
