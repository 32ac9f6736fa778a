#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace fermat::tools {

/// Empty cells render as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, double, std::string>;

/// Homogeneous rows under a fixed header.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

enum class Format { csv, json };

Format parse_format(const std::string& name);
std::string format_extension(Format f);

/// "%.16e" for finite numbers; "nan", "inf", "-inf" otherwise.
std::string format_number(double v);

/// Header row plus one line per row, RFC 4180 quoting, CRLF-free.
void write_csv(std::ostream& os, const Table& t);
/// Array of objects keyed by column name; non-finite numbers become null.
void write_json(std::ostream& os, const Table& t);

/// Writes to `path`, or to `fallback` when `path` is empty.  Errors carry
/// the path in their message.
void emit_table(const Table& t, Format f, const std::string& path, std::ostream& fallback);

}  // namespace fermat::tools
