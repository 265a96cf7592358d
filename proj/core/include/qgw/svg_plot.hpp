#pragma once

#include <string>
#include <vector>

namespace qgw {

/// Minimal self-contained SVG line plots: enough for the publication-style
/// figures the scan driver emits (series, markers, log axes).
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string xlabel, std::string ylabel);

  void set_log_x(bool on) { logx_ = on; }
  void set_log_y(bool on) { logy_ = on; }

  void add_line(const std::vector<double>& x, const std::vector<double>& y,
                const std::string& label, const std::string& color,
                bool dashed = false);
  void add_vertical_marker(double x, const std::string& label,
                           const std::string& color);

  void write(const std::string& path) const;

 private:
  struct Series {
    std::vector<double> x, y;
    std::string label, color;
    bool dashed;
  };
  struct Marker {
    double x;
    std::string label, color;
  };

  std::string title_, xlabel_, ylabel_;
  bool logx_ = false, logy_ = false;
  std::vector<Series> series_;
  std::vector<Marker> markers_;
};

}  // namespace qgw
