#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ecr/bigint.hpp"
#include "ecr/error.hpp"

namespace ecr {

enum class Format { csv, json };

/// Shortest decimal that reads back to the same double.
inline std::string format_number(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InternalConsistency, "non-finite value in output record");
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string format_number(std::uint64_t x) { return std::to_string(x); }

/// Named columns of pre-formatted numeric cells plus `key=value` metadata.
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw Error(ErrorCode::InternalConsistency, "row width does not match header");
    rows.push_back(std::move(row));
  }
};

inline std::string render_csv(const Table& t) {
  std::string out;
  for (const auto& [k, v] : t.metadata) out += "# " + k + "=" + v + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
    out += "\n";
  }
  return out;
}

inline double parse_number(const std::string& cell) {
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
    throw Error(ErrorCode::InvalidSpec, "not a number: " + cell);
  return v;
}

inline nlohmann::ordered_json cell_json(const std::string& cell) {
  if (cell.find_first_of(".eE") == std::string::npos) {
    long long i = 0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), i);
    if (res.ec == std::errc{} && res.ptr == cell.data() + cell.size()) return i;
    return cell;  // integers beyond 64 bits, e.g. flatten indices
  }
  return parse_number(cell);
}

inline std::string render_json(const Table& t) {
  nlohmann::ordered_json j;
  auto& meta = j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.metadata) meta[k] = v;
  j["columns"] = t.columns;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& cell : row) r.push_back(cell_json(cell));
    rows.push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

inline std::string render(const Table& t, Format f) { return f == Format::csv ? render_csv(t) : render_json(t); }

/// Parses the CSV layout written by render_csv.
inline Table parse_csv(std::string_view text) {
  Table t;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    out.push_back(cur);
    return out;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::InvalidSpec, "metadata line without '=': " + line);
      t.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
    } else if (!header) {
      t.columns = split(line);
      header = true;
    } else {
      t.add_row(split(line));
    }
  }
  return t;
}

}  // namespace ecr
