#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "fermat/tools/table.hpp"
#include "json.hpp"

using namespace fermat::tools;

namespace {

Table sample() {
    Table t;
    t.columns = {"name", "value", "note"};
    t.add({std::string("alpha"), 1.0 / 3.0, std::monostate{}});
    t.add({std::string("beta, gamma"), -2.5e-300, std::string("say \"hi\"")});
    t.add({std::string("delta"), std::numeric_limits<double>::quiet_NaN(), std::string("")});
    return t;
}

// Minimal RFC 4180 line splitter, independent of the writer.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                out.back() += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.emplace_back();
        } else {
            out.back() += ch;
        }
    }
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST(Table, RowWidthIsChecked) {
    Table t;
    t.columns = {"a", "b"};
    EXPECT_THROW(t.add({1.0}), std::invalid_argument);
}

TEST(Table, FormatNames) {
    EXPECT_EQ(parse_format("csv"), Format::csv);
    EXPECT_EQ(parse_format("json"), Format::json);
    EXPECT_THROW(parse_format("xml"), std::invalid_argument);
    EXPECT_EQ(format_extension(Format::json), "json");
    EXPECT_EQ(format_extension(Format::csv), "csv");
}

TEST(Table, NumberFormatting) {
    EXPECT_EQ(format_number(1.0), "1.0000000000000000e+00");
    EXPECT_EQ(format_number(-0.5), "-5.0000000000000000e-01");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Csv, EmptyTableIsHeaderOnly) {
    Table t;
    t.columns = {"x", "y"};
    std::ostringstream os;
    write_csv(os, t);
    EXPECT_EQ(os.str(), "x,y\n");
}

TEST(Csv, QuotingAndRoundTrip) {
    const Table t = sample();
    std::ostringstream os;
    write_csv(os, t);
    EXPECT_EQ(os.str().find('\r'), std::string::npos);
    const auto lines = lines_of(os.str());
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], "name,value,note");
    const auto second = split_csv_line(lines[2]);
    ASSERT_EQ(second.size(), 3u);
    EXPECT_EQ(second[0], "beta, gamma");
    EXPECT_EQ(second[2], "say \"hi\"");
    EXPECT_EQ(std::strtod(second[1].c_str(), nullptr), -2.5e-300);
    const auto first = split_csv_line(lines[1]);
    EXPECT_EQ(std::strtod(first[1].c_str(), nullptr), 1.0 / 3.0);
    EXPECT_EQ(first[2], "");
    EXPECT_EQ(split_csv_line(lines[3])[1], "nan");
}

TEST(Csv, NumbersSurviveReparsing) {
    Table t;
    t.columns = {"v"};
    const double values[] = {std::numbers::pi, 1e-310, 6.02214076e23, -1.0 / 7.0, 0.1};
    for (double v : values) t.add({v});
    std::ostringstream os;
    write_csv(os, t);
    const auto lines = lines_of(os.str());
    for (std::size_t i = 0; i < std::size(values); ++i) {
        const double back = std::strtod(lines[i + 1].c_str(), nullptr);
        EXPECT_LE(std::abs(back - values[i]), std::abs(std::nextafter(values[i], 0.0) - values[i])) << i;
    }
}

TEST(Json, ArrayOfObjects) {
    const Table t = sample();
    std::ostringstream os;
    write_json(os, t);
    const auto j = nlohmann::json::parse(os.str());
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 3u);
    EXPECT_EQ(j[0]["name"], "alpha");
    EXPECT_EQ(j[0]["value"].get<double>(), 1.0 / 3.0);
    EXPECT_TRUE(j[0]["note"].is_null());
    EXPECT_EQ(j[1]["note"], "say \"hi\"");
    EXPECT_TRUE(j[2]["value"].is_null());
    // Column order is preserved.
    std::vector<std::string> keys;
    const auto ordered = nlohmann::ordered_json::parse(os.str());
    for (const auto& [k, _] : ordered[0].items()) keys.push_back(k);
    EXPECT_EQ(keys, t.columns);
}

TEST(Json, EmptyTable) {
    Table t;
    t.columns = {"x"};
    std::ostringstream os;
    write_json(os, t);
    EXPECT_EQ(nlohmann::json::parse(os.str()), nlohmann::json::array());
}

TEST(Emit, FallbackAndErrors) {
    const Table t = sample();
    std::ostringstream fallback;
    emit_table(t, Format::csv, "", fallback);
    EXPECT_EQ(lines_of(fallback.str()).size(), 4u);
    try {
        emit_table(t, Format::csv, "/nonexistent-dir/out.csv", fallback);
        FAIL() << "expected an exception";
    } catch (const std::exception& e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.csv"), std::string::npos);
    }
}
