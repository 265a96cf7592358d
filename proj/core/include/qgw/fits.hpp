#pragma once

#include <span>
#include <vector>

namespace qgw {

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;   ///< fit is y = prefactor * x^exponent
  double std_error = 0.0;   ///< standard error of the exponent
  int points = 0;
};

/// Log-log least squares on the samples with x in [x_lo, x_hi].
/// Throws NonPositive when a sample in the window is <= 0.
PowerLawFit loglog_fit(std::span<const double> x, std::span<const double> y,
                       double x_lo, double x_hi);

/// Mean of y over t in [t_lo, t_hi].
double window_mean(std::span<const double> t, std::span<const double> y,
                   double t_lo, double t_hi);

struct PlateauCheck {
  double value = 0.0;        ///< window mean
  double fluctuation = 0.0;  ///< max |windowed mean - value| / |value| over sub-windows
  bool stable = false;
};

/// Splits [t_lo, t_hi] into `pieces` sub-windows and compares their means
/// against the global mean; stable when the spread is below rel_tol.
PlateauCheck plateau_check(std::span<const double> t, std::span<const double> y,
                           double t_lo, double t_hi, double rel_tol,
                           int pieces = 4);

/// Mean spacing of upward zero crossings of (y - offset) in [t_lo, t_hi];
/// returns 0 when fewer than two crossings exist.
double dominant_period(std::span<const double> t, std::span<const double> y,
                       double t_lo, double t_hi, double offset = 0.0);

/// Envelope samples: local maxima of |y| in the window (for oscillatory decays).
void envelope_peaks(std::span<const double> t, std::span<const double> y,
                    double t_lo, double t_hi,
                    std::vector<double>& peak_t, std::vector<double>& peak_y);

}  // namespace qgw
