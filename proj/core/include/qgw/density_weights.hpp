#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qgw/spectrum.hpp"

namespace qgw {

/// Spectral decomposition of the local density channel, flattened over
/// (wedge point, branch) with zero modes dropped.
///
/// One-particle amplitudes N_i = sum_n (n - n0) c0_n (u_n + v_n); the
/// (n - n0)-weighted amplitude vectors du, dv factorize the two-particle
/// coefficients over the Fock index:
///   W(i, j) = du_i . v_j,  U(i, j) = du_i . u_j,  V(i, j) = dv_i . v_j.
struct DensityWeights {
  int fock_states = 0;
  std::int64_t volume = 0;
  double n0 = 0.0;
  int branches = 0;

  std::vector<double> omega;  ///< per mode
  std::vector<double> mult;   ///< orbit multiplicity (full-zone count)
  std::vector<int> branch;
  std::vector<double> N;      ///< one-particle amplitude

  Eigen::MatrixXd u, v, du, dv;  ///< n_modes x fock_states

  std::size_t n_modes() const { return omega.size(); }

  double W(std::size_t i, std::size_t j) const { return du.row(i).dot(v.row(j)); }
  double U_coef(std::size_t i, std::size_t j) const { return du.row(i).dot(u.row(j)); }
  double V_coef(std::size_t i, std::size_t j) const { return dv.row(i).dot(v.row(j)); }

  /// (1/V) sum_k N^2: zeroth moment of the one-particle spectral density.
  double one_particle_moment() const;
};

DensityWeights compute_weights(const ExcitationSpectrum& sp);

}  // namespace qgw
