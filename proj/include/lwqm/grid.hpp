#pragma once
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "lwqm/errors.hpp"

// Tabular output: a named-column table with free-form metadata, written
// deterministically as CSV or JSON. All numbers use printf "%.12e" so runs
// are byte-for-byte reproducible.

namespace lwqm::grid {

struct NumericTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;   // one vector per name
  std::map<std::string, std::string> meta;    // ordered => deterministic

  std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
  void add_column(std::string name) {
    names.push_back(std::move(name));
    columns.emplace_back();
  }
  void push_row(const std::vector<double>& row) {
    if (row.size() != columns.size())
      throw IndexError("push_row: column count mismatch");
    for (std::size_t i = 0; i < row.size(); ++i)
      columns[i].push_back(row[i]);
  }
};

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

} // namespace detail

//! CSV: "# key: value" comment lines, a header row, then data rows.
inline void write_csv(const NumericTable& t, std::ostream& os) {
  for (const auto& [k, v] : t.meta) os << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < t.names.size(); ++i)
    os << (i ? "," : "") << t.names[i];
  os << "\n";
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      os << (c ? "," : "") << detail::fmt(t.columns[c][r]);
    os << "\n";
  }
}

//! JSON: {"meta": {...}, "columns": [names], "rows": [[...], ...]}.
//! Values are emitted as strings in the same fixed format as the CSV.
inline void write_json(const NumericTable& t, std::ostream& os) {
  os << "{\n  \"meta\": {";
  bool first = true;
  for (const auto& [k, v] : t.meta) {
    os << (first ? "" : ",") << "\n    \"" << detail::json_escape(k)
       << "\": \"" << detail::json_escape(v) << "\"";
    first = false;
  }
  os << (t.meta.empty() ? "" : "\n  ") << "},\n  \"columns\": [";
  for (std::size_t i = 0; i < t.names.size(); ++i)
    os << (i ? ", " : "") << "\"" << detail::json_escape(t.names[i]) << "\"";
  os << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows(); ++r) {
    os << (r ? ",\n    " : "\n    ") << "[";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      os << (c ? ", " : "") << "\"" << detail::fmt(t.columns[c][r]) << "\"";
    os << "]";
  }
  os << (t.rows() ? "\n  " : "") << "]\n}\n";
}

} // namespace lwqm::grid
