#pragma once

// Tabular report emitted by the command-line tool as text, CSV or JSON.
// All numeric values are carried as decimal strings so no precision is lost
// on the way to downstream tooling.

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mincollector::cli {

inline constexpr int kSchemaVersion = 1;

enum class Format { text, csv, json };

Format parse_format(std::string_view name);

using Field = std::pair<std::string, std::string>;

struct Report {
    std::string command;
    std::vector<Field> params;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<Field> summary;

    void add_row(std::vector<std::string> row);
};

void write(std::ostream& out, const Report& report, Format format);

std::string format_double(double value);

}  // namespace mincollector::cli
