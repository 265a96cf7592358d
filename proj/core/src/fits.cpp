#include "qgw/fits.hpp"

#include <cmath>
#include <string>

#include "qgw/errors.hpp"

namespace qgw {

PowerLawFit loglog_fit(std::span<const double> x, std::span<const double> y,
                       double x_lo, double x_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < x_lo || x[i] > x_hi) continue;
    if (!(y[i] > 0.0) || !(x[i] > 0.0))
      throw NonPositive("loglog_fit: non-positive sample at x = " +
                        std::to_string(x[i]));
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++n;
  }
  if (n < 3) throw NonPositive("loglog_fit: fewer than 3 samples in window");
  const double det = n * sxx - sx * sx;
  PowerLawFit fit;
  fit.points = n;
  fit.exponent = (n * sxy - sx * sy) / det;
  const double intercept = (sy * sxx - sx * sxy) / det;
  fit.prefactor = std::exp(intercept);
  // residual variance -> standard error of the slope
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < x_lo || x[i] > x_hi) continue;
    const double r = std::log(y[i]) - (intercept + fit.exponent * std::log(x[i]));
    ss += r * r;
  }
  if (n > 2) fit.std_error = std::sqrt(ss / (n - 2) * n / det);
  return fit;
}

double window_mean(std::span<const double> t, std::span<const double> y,
                   double t_lo, double t_hi) {
  double s = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= t_lo && t[i] <= t_hi) { s += y[i]; ++n; }
  return n ? s / n : 0.0;
}

PlateauCheck plateau_check(std::span<const double> t, std::span<const double> y,
                           double t_lo, double t_hi, double rel_tol, int pieces) {
  PlateauCheck out;
  out.value = window_mean(t, y, t_lo, t_hi);
  const double w = (t_hi - t_lo) / pieces;
  for (int p = 0; p < pieces; ++p) {
    const double m = window_mean(t, y, t_lo + p * w, t_lo + (p + 1) * w);
    out.fluctuation = std::max(
        out.fluctuation, std::abs(m - out.value) / std::max(std::abs(out.value), 1e-300));
  }
  out.stable = out.fluctuation < rel_tol;
  return out;
}

double dominant_period(std::span<const double> t, std::span<const double> y,
                       double t_lo, double t_hi, double offset) {
  double first = 0.0, last = 0.0;
  int crossings = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i - 1] < t_lo || t[i] > t_hi) continue;
    const double a = y[i - 1] - offset, b = y[i] - offset;
    if (a < 0.0 && b >= 0.0) {
      const double tz = t[i - 1] + (t[i] - t[i - 1]) * a / (a - b);
      if (crossings == 0) first = tz;
      last = tz;
      ++crossings;
    }
  }
  return crossings >= 2 ? (last - first) / (crossings - 1) : 0.0;
}

void envelope_peaks(std::span<const double> t, std::span<const double> y,
                    double t_lo, double t_hi,
                    std::vector<double>& peak_t, std::vector<double>& peak_y) {
  peak_t.clear();
  peak_y.clear();
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    const double a = std::abs(y[i - 1]), b = std::abs(y[i]), c = std::abs(y[i + 1]);
    if (b >= a && b > c) {
      peak_t.push_back(t[i]);
      peak_y.push_back(b);
    }
  }
}

}  // namespace qgw
