#pragma once

#include <span>
#include <string>
#include <vector>

namespace qgw {

/// Deterministic float formatting: 17 significant digits, C locale.
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

/// Writes columns (header row, LF line endings, %.17g cells). Byte-identical
/// output for identical data.
void write_csv(const std::string& path, const CsvTable& table);

CsvTable read_csv(const std::string& path);

/// Convenience for the time-series layouts used across the tools.
void write_series_csv(const std::string& path,
                      std::span<const std::string> names,
                      std::span<const std::vector<double>> cols);

}  // namespace qgw
