#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fwkb/errors.hpp"
#include "fwkb/report.hpp"

namespace fwkb::app {

enum class OutputFormat { table, csv, json };

inline OutputFormat parse_format(const std::string& text) {
  if (text == "table") return OutputFormat::table;
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ConfigError("unknown output format '" + text + "' (expected table, csv or json)");
}

inline constexpr const char* kSchemaVersion = "1";

/// Records plus an optional leading key column (the swept parameter).
struct ReportTable {
  std::optional<std::string> key_name;
  std::vector<double> keys;
  std::vector<ReportRecord> records;
  std::vector<std::string> notes;

  void add(ReportRecord r) { records.push_back(std::move(r)); }

  void add(double key, ReportRecord r) {
    keys.push_back(key);
    records.push_back(std::move(r));
  }

  bool passed() const { return all_pass(records); }
};

/// Fixed 17-significant-digit rendering; non-finite values become inf, -inf or nan.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string json_number(double x) { return std::isfinite(x) ? format_number(x) : "null"; }

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

inline void write_csv(std::ostream& os, const ReportTable& table) {
  os << "schema_version,";
  if (table.key_name) os << *table.key_name << ',';
  os << "quantity,analytic,numeric,residual,tolerance,pass\n";
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    const ReportRecord& r = table.records[i];
    os << kSchemaVersion << ',';
    if (table.key_name) os << format_number(table.keys[i]) << ',';
    os << r.quantity << ',' << format_number(r.analytic) << ',' << format_number(r.numeric) << ','
       << format_number(r.residual) << ',' << format_number(r.tolerance) << ',' << (r.pass ? "true" : "false")
       << '\n';
  }
}

inline void write_json(std::ostream& os, const ReportTable& table) {
  os << "[\n";
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    const ReportRecord& r = table.records[i];
    os << "  {\"schema_version\": " << json_string(kSchemaVersion);
    if (table.key_name) os << ", " << json_string(*table.key_name) << ": " << json_number(table.keys[i]);
    os << ", \"quantity\": " << json_string(r.quantity) << ", \"analytic\": " << json_number(r.analytic)
       << ", \"numeric\": " << json_number(r.numeric) << ", \"residual\": " << json_number(r.residual)
       << ", \"tolerance\": " << json_number(r.tolerance) << ", \"pass\": " << (r.pass ? "true" : "false") << '}'
       << (i + 1 < table.records.size() ? ",\n" : "\n");
  }
  os << "]\n";
}

inline void write_table(std::ostream& os, const ReportTable& table) {
  char line[512];
  const char* key = table.key_name ? table.key_name->c_str() : nullptr;
  if (key) {
    std::snprintf(line, sizeof line, "%-12s ", key);
    os << line;
  }
  std::snprintf(line, sizeof line, "%-44s %18s %18s %11s %11s  %s\n", "quantity", "analytic", "numeric", "residual",
                "tolerance", "pass");
  os << line;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    const ReportRecord& r = table.records[i];
    if (key) {
      std::snprintf(line, sizeof line, "%-12.6g ", table.keys[i]);
      os << line;
    }
    std::snprintf(line, sizeof line, "%-44s %18.10g %18.10g %11.3e %11.3e  %s\n", r.quantity.c_str(), r.analytic,
                  r.numeric, r.residual, r.tolerance, r.pass ? "PASS" : "FAIL");
    os << line;
    failed += r.pass ? 0 : 1;
  }
  os << table.records.size() << " records, " << failed << " failed\n";
  for (const std::string& note : table.notes) {
    os << "note: " << note << '\n';
  }
}

inline void write_report(std::ostream& os, const ReportTable& table, OutputFormat format) {
  switch (format) {
    case OutputFormat::table: write_table(os, table); break;
    case OutputFormat::csv: write_csv(os, table); break;
    case OutputFormat::json: write_json(os, table); break;
  }
}

}  // namespace fwkb::app
