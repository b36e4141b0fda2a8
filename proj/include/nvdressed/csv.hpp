#pragma once

// Minimal numeric CSV: one header line of column names, then rows of numbers.
// Cells are trimmed, so "a, b" and "a,b" read the same. Output uses 17
// significant digits, which round-trips doubles exactly.

#include <string>
#include <vector>

namespace nvdressed {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  /// Column by name; throws std::out_of_range if absent.
  const std::vector<double>& column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);
void write_csv(const std::string& path, const CsvTable& table);
std::string format_csv(const CsvTable& table);

/// "%.17g"
std::string format_double(double v);

}  // namespace nvdressed
