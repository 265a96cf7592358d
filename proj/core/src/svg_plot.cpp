#include "qgw/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "qgw/errors.hpp"

namespace qgw {

namespace {

constexpr double W = 720, H = 480;
constexpr double ML = 78, MR = 24, MT = 42, MB = 56;  // margins

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

std::vector<double> ticks_linear(double lo, double hi, int target = 6) {
  std::vector<double> out;
  if (!(hi > lo)) return out;
  const double raw = (hi - lo) / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) { step = m * mag; break; }
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * step; v += step)
    out.push_back(v);
  return out;
}

std::vector<double> ticks_log(double lo, double hi) {
  std::vector<double> out;
  for (int e = int(std::floor(std::log10(lo))); e <= int(std::ceil(std::log10(hi))); ++e) {
    const double v = std::pow(10.0, e);
    if (v >= lo / 1.001 && v <= hi * 1.001) out.push_back(v);
  }
  return out;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string xlabel, std::string ylabel)
    : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)) {}

void SvgPlot::add_line(const std::vector<double>& x, const std::vector<double>& y,
                       const std::string& label, const std::string& color,
                       bool dashed) {
  series_.push_back({x, y, label, color, dashed});
}

void SvgPlot::add_vertical_marker(double x, const std::string& label,
                                  const std::string& color) {
  markers_.push_back({x, label, color});
}

void SvgPlot::write(const std::string& path) const {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const auto& s : series_)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (logx_ && !(s.x[i] > 0)) continue;
      if (logy_ && !(s.y[i] > 0)) continue;
      xlo = std::min(xlo, s.x[i]); xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]); yhi = std::max(yhi, s.y[i]);
    }
  if (!(xhi > xlo)) { xlo = 0; xhi = 1; }
  if (!(yhi > ylo)) { ylo = 0; yhi = 1; }
  if (!logy_) {
    const double pad = 0.05 * (yhi - ylo);
    ylo -= pad; yhi += pad;
  }

  auto px = [&](double v) {
    const double u = logx_ ? (std::log10(v) - std::log10(xlo)) /
                                 (std::log10(xhi) - std::log10(xlo))
                           : (v - xlo) / (xhi - xlo);
    return ML + u * (W - ML - MR);
  };
  auto py = [&](double v) {
    const double u = logy_ ? (std::log10(v) - std::log10(ylo)) /
                                 (std::log10(yhi) - std::log10(ylo))
                           : (v - ylo) / (yhi - ylo);
    return H - MB - u * (H - MT - MB);
  };

  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path);
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
    << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"15\">" << title_ << "</text>\n";

  // frame
  f << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << W - ML - MR
    << "\" height=\"" << H - MT - MB
    << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  const auto xt = logx_ ? ticks_log(xlo, xhi) : ticks_linear(xlo, xhi);
  const auto yt = logy_ ? ticks_log(ylo, yhi) : ticks_linear(ylo, yhi);
  for (double v : xt) {
    f << "<line x1=\"" << px(v) << "\" y1=\"" << H - MB << "\" x2=\"" << px(v)
      << "\" y2=\"" << H - MB + 5 << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << px(v) << "\" y=\"" << H - MB + 19
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
      << fmt(v) << "</text>\n";
  }
  for (double v : yt) {
    f << "<line x1=\"" << ML - 5 << "\" y1=\"" << py(v) << "\" x2=\"" << ML
      << "\" y2=\"" << py(v) << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << ML - 8 << "\" y=\"" << py(v) + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << fmt(v) << "</text>\n";
  }
  f << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 14
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
    << xlabel_ << "</text>\n"
    << "<text x=\"18\" y=\"" << (MT + H - MB) / 2
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
       "transform=\"rotate(-90 18 " << (MT + H - MB) / 2 << ")\">"
    << ylabel_ << "</text>\n";

  for (const auto& m : markers_) {
    if (m.x < xlo || m.x > xhi) continue;
    f << "<line x1=\"" << px(m.x) << "\" y1=\"" << MT << "\" x2=\"" << px(m.x)
      << "\" y2=\"" << H - MB << "\" stroke=\"" << m.color
      << "\" stroke-dasharray=\"6,4\" stroke-width=\"1.2\"/>\n";
    if (!m.label.empty())
      f << "<text x=\"" << px(m.x) + 4 << "\" y=\"" << MT + 14
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << m.color
        << "\">" << m.label << "</text>\n";
  }

  int li = 0;
  for (const auto& s : series_) {
    f << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
    if (s.dashed) f << " stroke-dasharray=\"5,4\"";
    f << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (logx_ && !(s.x[i] > 0)) continue;
      if (logy_ && !(s.y[i] > 0)) continue;
      f << fmt(px(s.x[i])) << "," << fmt(py(s.y[i])) << " ";
    }
    f << "\"/>\n";
    if (!s.label.empty()) {
      const double ly = MT + 16 + 16 * li++;
      f << "<line x1=\"" << W - MR - 150 << "\" y1=\"" << ly << "\" x2=\""
        << W - MR - 124 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"5,4\"" : "")
        << "/>\n"
        << "<text x=\"" << W - MR - 118 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label
        << "</text>\n";
    }
  }
  f << "</svg>\n";
}

}  // namespace qgw
