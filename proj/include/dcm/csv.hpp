#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcm/config.hpp"
#include "dcm/metrics.hpp"

namespace dcm {

// Shortest round-trippable decimal form; locale-independent.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string format_opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

inline constexpr const char* kTraceHeader =
    "run_id,seed,t,gap,g_surrogate,moreau_grad_sq,m_err,eg_err,delta,phi";

inline void write_trace_rows(std::ostream& out, const std::string& run_id,
                             const RunResult& run) {
  for (const auto& row : run.trace) {
    out << run_id << ',' << run.seed << ',' << row.t << ','
        << format_opt(row.gap) << ',' << format_opt(row.g_surrogate) << ','
        << format_opt(row.moreau_grad_sq) << ',' << format_opt(row.m_err)
        << ',' << format_opt(row.eg_err) << ',' << format_opt(row.delta) << ','
        << format_opt(row.phi) << '\n';
  }
}

struct CsvRow {
  std::string run_id;
  std::uint64_t seed = 0;
  std::int64_t t = 0;
  std::map<std::string, double> cols;  // absent fields omitted
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// Reads a trace CSV written by write_trace_rows (used by `dcm plot`).
inline std::vector<CsvRow> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfigError("cannot open CSV '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw InvalidConfigError("empty CSV '" + path + "'");
  std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "run_id" || header[1] != "seed" ||
      header[2] != "t")
    throw InvalidConfigError("CSV '" + path +
                             "' does not start with run_id,seed,t");
  std::vector<CsvRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw InvalidConfigError(path + ":" + std::to_string(lineno) +
                               ": wrong field count");
    CsvRow row;
    row.run_id = fields[0];
    row.seed = std::strtoull(fields[1].c_str(), nullptr, 10);
    row.t = std::strtoll(fields[2].c_str(), nullptr, 10);
    for (std::size_t i = 3; i < fields.size(); ++i) {
      if (fields[i].empty()) continue;
      row.cols[header[i]] =
          RawConfig::to_double(fields[i], header[i], lineno);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dcm
