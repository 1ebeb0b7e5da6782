#pragma once

// Result tables and their CSV / JSON serialisation. Numbers are printed with
// 17 significant digits; lines end in LF.

#include <cmath>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "cli/parse.hpp"

namespace mobius::cli {

using Cell = std::variant<double, std::string, bool>;
using Row = std::vector<Cell>;

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

inline std::string csv_field(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
  }
}

inline std::string json_value(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_real(*d) : "null";
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return nlohmann::json(std::get<std::string>(c)).dump();
}

// {"config": ..., "columns": [...], "rows": [[...], ...]}. The config object
// is the run configuration, so the file can be fed back with --replay.
inline void write_json(std::ostream& os, const Table& t, const nlohmann::json& config) {
  os << "{\n  \"config\": " << config.dump() << ",\n  \"columns\": [";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? ", " : "") << nlohmann::json(t.columns[i]).dump();
  os << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? ",\n    [" : "\n    [");
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) os << (i ? ", " : "") << json_value(t.rows[r][i]);
    os << "]";
  }
  os << (t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace mobius::cli
