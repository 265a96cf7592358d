#pragma once

#include <Eigen/Dense>
#include <array>

#include "qgw/gutzwiller.hpp"

namespace qgw {

/// Quadratic fluctuation problem at one lattice momentum.
///
/// The momentum enters only through zk = 2 sum_i cos k_i. A and B are the
/// blocks of the pseudo-Hermitian form [[A, B], [-B, -A]] acting on local
/// fluctuations orthogonal to the ground-state amplitudes:
///   A(k) = P (h(psi) - lambda0) P - J zk P (wA wA^T + wB wB^T) P
///   B(k) =                        - J zk P (wA wB^T + wB wA^T) P
/// with wA = a^T c0, wB = a c0 the order-parameter gradients, P the
/// projector off c0, and lambda0 the single-site ground eigenvalue, which
/// makes the k = 0 phase mode exactly gapless in the superfluid.
struct FluctuationBlock {
  std::array<double, 2> k{};   ///< momentum components in [-pi, pi)
  double zk = 0.0;
  Eigen::MatrixXd A, B;        ///< (n_max+1)^2, real symmetric, c0-projected
  Eigen::MatrixXd basis;       ///< (n_max+1) x n_max orthonormal complement of c0
};

/// Orthonormal basis of the complement of c0 (Householder construction).
Eigen::MatrixXd orthogonal_complement(const Eigen::VectorXd& c0);

FluctuationBlock build_fluctuation_block(const GutzwillerState& state,
                                         const std::array<int, 2>& m_index);

/// Same, keyed directly by zk (all momenta with equal zk share the block).
FluctuationBlock build_fluctuation_block_zk(const GutzwillerState& state,
                                            double zk);

}  // namespace qgw
