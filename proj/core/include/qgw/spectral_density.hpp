#pragma once

#include <vector>

#include "qgw/density_weights.hpp"
#include "qgw/fits.hpp"

namespace qgw {

/// Histogram of the one-particle weights: J(omega) = (1/V) sum N^2 delta(...).
struct SpectralDensity {
  double d_omega = 0.005;
  std::vector<double> edges;    ///< size bins + 1
  std::vector<double> values;   ///< weight density per unit frequency
  std::vector<std::vector<double>> branch_values;  ///< per-branch sub-histograms

  std::size_t bins() const { return values.size(); }
  double center(std::size_t b) const { return 0.5 * (edges[b] + edges[b + 1]); }
  /// sum values * d_omega; equals the one-particle moment by construction.
  double zeroth_moment() const;
};

SpectralDensity spectral_density(const DensityWeights& w, double d_omega);

struct LowFrequencyFit {
  PowerLawFit fit;
  double omega_lo = 0.0, omega_hi = 0.0;  ///< fitted decade
  int skipped_bins = 2;
};

/// Log-log fit over the lowest decade of nonzero bins, excluding the bottom
/// `skip` bins (finite-size gap pollution).
LowFrequencyFit fit_low_frequency(const SpectralDensity& J, int skip = 2);

}  // namespace qgw
