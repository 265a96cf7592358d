#include "qgw/spectral_density.hpp"

#include <algorithm>
#include <cmath>

#include "qgw/errors.hpp"

namespace qgw {

double SpectralDensity::zeroth_moment() const {
  double s = 0.0;
  for (double v : values) s += v * d_omega;
  return s;
}

SpectralDensity spectral_density(const DensityWeights& w, double d_omega) {
  if (!(d_omega > 0.0)) throw InvalidParams("bin width must be positive");
  SpectralDensity J;
  J.d_omega = d_omega;
  double om_max = 0.0;
  for (double om : w.omega) om_max = std::max(om_max, om);
  const std::size_t nb = std::size_t(std::floor(om_max / d_omega)) + 1;
  J.values.assign(nb, 0.0);
  J.branch_values.assign(w.branches, std::vector<double>(nb, 0.0));
  J.edges.resize(nb + 1);
  for (std::size_t b = 0; b <= nb; ++b) J.edges[b] = b * d_omega;

  const double norm = 1.0 / (double(w.volume) * d_omega);
  for (std::size_t i = 0; i < w.n_modes(); ++i) {
    std::size_t b = std::size_t(w.omega[i] / d_omega);
    if (b >= nb) b = nb - 1;
    const double add = norm * w.mult[i] * w.N[i] * w.N[i];
    J.values[b] += add;
    J.branch_values[w.branch[i]][b] += add;
  }
  return J;
}

LowFrequencyFit fit_low_frequency(const SpectralDensity& J, int skip) {
  // lowest decade of nonzero bins, bottom `skip` nonzero bins excluded
  LowFrequencyFit out;
  out.skipped_bins = skip;
  std::vector<double> x, y;
  int seen = 0;
  double om_lo = 0.0;
  for (std::size_t b = 0; b < J.bins(); ++b) {
    if (J.values[b] <= 0.0) continue;
    if (seen++ < skip) continue;
    if (om_lo == 0.0) om_lo = J.center(b);
    if (J.center(b) > 10.0 * om_lo) break;
    x.push_back(J.center(b));
    y.push_back(J.values[b]);
  }
  if (x.size() < 3) throw NonPositive("fit_low_frequency: not enough nonzero bins");
  out.omega_lo = x.front();
  out.omega_hi = x.back();
  out.fit = loglog_fit(x, y, out.omega_lo, out.omega_hi);
  return out;
}

}  // namespace qgw
