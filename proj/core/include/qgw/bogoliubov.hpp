#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qgw/fluctuations.hpp"

namespace qgw {

/// One Bogoliubov excitation mode.
struct Mode {
  int branch = 0;            ///< 0 = lowest (Goldstone in SF), 1 = next (Higgs), ...
  double omega = 0.0;        ///< >= 0, units of U
  Eigen::VectorXd u, v;      ///< real amplitudes in Fock coordinates, u.u - v.v = 1
  bool zero_mode = false;    ///< flagged (u, v left empty-normalized), excluded from sums
};

struct DiagonalizeOptions {
  double zero_tol = 1e-12;       ///< omega below this (units of U) clamps to 0
  double stability_tol = 1e-9;   ///< negative-eigenvalue tolerance before throwing
};

/// Solves [[A, B], [-B, -A]] (u; v) = omega (u; v) restricted to the
/// fluctuation subspace, via the symmetric split S (A-B) S with
/// S = (A+B)^{1/2}. Returns positive-norm modes sorted ascending in omega.
/// Throws DynamicallyUnstable when A+B or the split matrix has a negative
/// eigenvalue beyond tolerance (complex frequency upstream).
std::vector<Mode> diagonalize_modes(const FluctuationBlock& block,
                                    const DiagonalizeOptions& opt = {});

/// Dense reference solver on the 2N x 2N non-symmetric problem eta L with
/// explicit positive-norm selection. Slow; used as a cross-check oracle and
/// as the fallback when the symmetric route reports instability.
std::vector<Mode> diagonalize_modes_dense(const FluctuationBlock& block,
                                          const DiagonalizeOptions& opt = {});

}  // namespace qgw
