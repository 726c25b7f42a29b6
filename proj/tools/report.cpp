#include "report.hpp"

#include "mincollector/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace mincollector::cli {

Format parse_format(std::string_view name) {
    if (name == "text") return Format::text;
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw DomainError("unknown output format '" + std::string(name) + "'");
}

void Report::add_row(std::vector<std::string> row) {
    require_domain(row.size() == columns.size(), "report row width does not match its columns");
    rows.push_back(std::move(row));
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

namespace {

std::string csv_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

void write_csv(std::ostream& out, const Report& report) {
    out << "# mincollector " << MINCOLLECTOR_VERSION << ' ' << report.command << '\n';
    for (const auto& [key, value] : report.params) out << "# " << key << '=' << value << '\n';
    for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << csv_cell(report.columns[i]);
    out << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
    }
    for (const auto& [key, value] : report.summary) out << "# " << key << '=' << value << '\n';
}

void write_text(std::ostream& out, const Report& report) {
    out << "mincollector " << MINCOLLECTOR_VERSION << " :: " << report.command << '\n';
    for (const auto& [key, value] : report.params) out << "  " << key << " = " << value << '\n';
    std::size_t width = 0;
    for (const auto& c : report.columns) width = std::max(width, c.size());
    for (const auto& [key, value] : report.summary) width = std::max(width, key.size());
    for (const auto& row : report.rows) {
        out << '\n';
        for (std::size_t i = 0; i < row.size(); ++i)
            out << report.columns[i] << std::string(width - report.columns[i].size() + 2, ' ') << row[i] << '\n';
    }
    if (!report.summary.empty()) out << '\n';
    for (const auto& [key, value] : report.summary)
        out << key << std::string(width - key.size() + 2, ' ') << value << '\n';
}

void write_json(std::ostream& out, const Report& report) {
    nlohmann::ordered_json doc;
    doc["toolkit"] = "mincollector";
    doc["version"] = MINCOLLECTOR_VERSION;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = report.command;
    doc["params"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.params) doc["params"][key] = value;
    doc["columns"] = report.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json entry = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) entry[report.columns[i]] = row[i];
        doc["rows"].push_back(std::move(entry));
    }
    doc["summary"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.summary) doc["summary"][key] = value;
    out << doc.dump(2) << '\n';
}

}  // namespace

void write(std::ostream& out, const Report& report, Format format) {
    switch (format) {
        case Format::text: write_text(out, report); break;
        case Format::csv: write_csv(out, report); break;
        case Format::json: write_json(out, report); break;
    }
}

}  // namespace mincollector::cli
