#include "fermat/tools/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

namespace fermat::tools {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("table row has " + std::to_string(row.size()) +
                                    " cells, header has " + std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw std::invalid_argument("unknown format '" + name + "' (expected csv or json)");
}

std::string format_extension(Format f) { return f == Format::csv ? "csv" : "json"; }

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string cell_text(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return format_number(*d);
    if (const std::string* text = std::get_if<std::string>(&c)) return *text;
    return {};
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << quote(t.columns[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << quote(cell_text(row[i]));
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& t) {
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (const double* d = std::get_if<double>(&row[i])) {
                obj[t.columns[i]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nullptr;
            } else if (const std::string* text = std::get_if<std::string>(&row[i])) {
                obj[t.columns[i]] = *text;
            } else {
                obj[t.columns[i]] = nullptr;
            }
        }
        array.push_back(std::move(obj));
    }
    os << array.dump(2) << '\n';
}

void emit_table(const Table& t, Format f, const std::string& path, std::ostream& fallback) {
    auto write = [&](std::ostream& os) {
        if (f == Format::csv) write_csv(os, t);
        else write_json(os, t);
    };
    if (path.empty()) {
        write(fallback);
        fallback.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    write(file);
    file.flush();
    if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace fermat::tools
