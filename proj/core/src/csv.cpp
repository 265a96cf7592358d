#include "qgw/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qgw/errors.hpp"

namespace qgw {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream f(path, std::ios::binary);  // binary: LF endings everywhere
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  for (std::size_t c = 0; c < table.header.size(); ++c)
    f << (c ? "," : "") << table.header[c];
  f << "\n";
  const std::size_t rows = table.columns.empty() ? 0 : table.columns[0].size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      f << (c ? "," : "") << format_double(table.columns[c][r]);
    f << "\n";
  }
}

CsvTable read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw MissingSeries("cannot open " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(f, line)) throw MissingSeries(path + " is empty");
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  t.columns.resize(t.header.size());
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::size_t c = 0;
    while (std::getline(ls, cell, ',') && c < t.columns.size())
      t.columns[c++].push_back(std::stod(cell));
  }
  return t;
}

void write_series_csv(const std::string& path,
                      std::span<const std::string> names,
                      std::span<const std::vector<double>> cols) {
  CsvTable t;
  t.header.assign(names.begin(), names.end());
  t.columns.assign(cols.begin(), cols.end());
  write_csv(path, t);
}

}  // namespace qgw
