#include "qgw/fluctuations.hpp"

#include <cmath>
#include <numbers>

#include "qgw/kgrid.hpp"

namespace qgw {

Eigen::MatrixXd orthogonal_complement(const Eigen::VectorXd& c0) {
  const int N = int(c0.size());
  Eigen::VectorXd v = c0;
  v[0] -= 1.0;  // reflector mapping e0 -> c0
  const double nrm = v.norm();
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(N, N);
  if (nrm > 1e-14) {
    v /= nrm;
    H -= 2.0 * v * v.transpose();
  }
  return H.rightCols(N - 1);
}

FluctuationBlock build_fluctuation_block_zk(const GutzwillerState& st, double zk) {
  const BathParams& p = st.params;
  const int N = p.fock_cutoff + 1;
  const Eigen::VectorXd& c0 = st.amplitudes;
  const Eigen::MatrixXd a = lowering_operator(p.fock_cutoff);
  const Eigen::VectorXd wA = a.transpose() * c0;
  const Eigen::VectorXd wB = a * c0;
  const Eigen::MatrixXd P =
      Eigen::MatrixXd::Identity(N, N) - c0 * c0.transpose();

  Eigen::MatrixXd h = mean_field_hamiltonian(p, st.order_parameter);
  h.diagonal().array() -= st.lagrange_multiplier;

  FluctuationBlock blk;
  blk.zk = zk;
  blk.A = P * (h - p.hopping * zk * (wA * wA.transpose() + wB * wB.transpose())) * P;
  blk.B = P * (-p.hopping * zk * (wA * wB.transpose() + wB * wA.transpose())) * P;
  blk.A = 0.5 * (blk.A + blk.A.transpose().eval());  // scrub roundoff asymmetry
  blk.B = 0.5 * (blk.B + blk.B.transpose().eval());
  blk.basis = orthogonal_complement(c0);
  return blk;
}

FluctuationBlock build_fluctuation_block(const GutzwillerState& st,
                                         const std::array<int, 2>& m) {
  const int Ls = st.params.linear_size;
  FluctuationBlock blk =
      build_fluctuation_block_zk(st, KGrid::zk_of(m, Ls, st.params.dimension));
  for (int i = 0; i < st.params.dimension; ++i) {
    int mi = ((m[i] % Ls) + Ls) % Ls;
    if (mi >= Ls / 2) mi -= Ls;  // map to [-pi, pi)
    blk.k[i] = 2.0 * std::numbers::pi * mi / Ls;
  }
  return blk;
}

}  // namespace qgw
