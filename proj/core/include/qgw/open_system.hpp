#pragma once

#include <complex>
#include <vector>

#include "qgw/dephasing_rates.hpp"

namespace qgw {

/// Two-level impurity density matrix.
struct ImpurityState {
  std::complex<double> rho11{1.0, 0.0}, rho12{0.0, 0.0};
  std::complex<double> rho21{0.0, 0.0}, rho22{0.0, 0.0};

  double trace() const { return rho11.real() + rho22.real(); }
  bool hermitian(double tol = 1e-12) const;
  /// |rho12|^2 <= rho11 rho22 and non-negative diagonal.
  bool positive_semidefinite(double tol = 1e-12) const;
  void validate() const;  ///< throws InvalidState

  static ImpurityState plus_state() {  // |+><+|
    return {{0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}};
  }
};

/// Loschmidt echo L(t) = exp[-2 g^2 Gamma(t)] (hbar = 1).
std::vector<double> loschmidt_echo(const std::vector<double>& Gamma, double g);

struct ImpurityTrajectory {
  TimeGrid grid;
  std::vector<ImpurityState> rho;
  bool positivity_ok = true;     ///< checked, never clipped
  double worst_violation = 0.0;
};

/// Pure-dephasing map: diagonals constant,
/// rho12(t) = rho12(0) sqrt(L) e^{-i omega_tilde t} (phase optional).
ImpurityTrajectory evolve_impurity(const ImpurityState& rho0, const TimeGrid& g,
                                   const std::vector<double>& echo,
                                   double omega_tilde, bool include_phase = true);

struct MarkovianityReport {
  double N_minus = 0.0;  ///< echo gain over gamma < 0 intervals (back-flow)
  double N_plus = 0.0;   ///< echo loss over gamma > 0 intervals, as magnitude
  double R = 0.0;        ///< N_minus / N_plus; 0 when N_minus = 0
  std::vector<std::pair<double, double>> negative_intervals;
  std::vector<double> interval_echo;  ///< sqrt(L) at interval endpoints
  double sqrtL_end = 1.0;
};

struct BlpOptions {
  double dead_band = 1e-12;  ///< |gamma| below this counts as zero
};

/// BLP bookkeeping from aligned gamma(t) and L(t) series. Sign changes of
/// gamma are located by linear interpolation, sqrt(L) interpolated at the
/// same points, so N_plus - N_minus telescopes to 1 - sqrt(L(t_end)) exactly.
MarkovianityReport blp_measures(const TimeGrid& g, const std::vector<double>& gamma,
                                const std::vector<double>& echo, double coupling_g,
                                const BlpOptions& opt = {});

}  // namespace qgw
