#include "qgw/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "qgw/errors.hpp"

namespace qgw {

namespace {

Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& M, double tol,
                               const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  Eigen::VectorXd d = es.eigenvalues();
  for (int i = 0; i < d.size(); ++i) {
    if (d[i] < -tol * scale)
      throw DynamicallyUnstable(std::string(what) +
                                " has negative eigenvalue " + std::to_string(d[i]));
    d[i] = d[i] > 0.0 ? std::sqrt(d[i]) : 0.0;
  }
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

void sort_by_omega(std::vector<Mode>& modes) {
  std::stable_sort(modes.begin(), modes.end(),
                   [](const Mode& a, const Mode& b) { return a.omega < b.omega; });
  for (std::size_t i = 0; i < modes.size(); ++i) modes[i].branch = int(i);
}

}  // namespace

std::vector<Mode> diagonalize_modes(const FluctuationBlock& blk,
                                    const DiagonalizeOptions& opt) {
  const Eigen::MatrixXd& Q = blk.basis;
  const Eigen::MatrixXd Ar = Q.transpose() * blk.A * Q;
  const Eigen::MatrixXd Br = Q.transpose() * blk.B * Q;
  const int M = int(Ar.rows());

  const Eigen::MatrixXd S = symmetric_sqrt(Ar + Br, opt.stability_tol, "A+B");
  Eigen::MatrixXd K = S * (Ar - Br) * S;
  K = 0.5 * (K + K.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());

  std::vector<Mode> modes(M);
  for (int i = 0; i < M; ++i) {
    const double w2 = es.eigenvalues()[i];
    if (w2 < -opt.stability_tol * scale)
      throw DynamicallyUnstable("omega^2 = " + std::to_string(w2) + " < 0");
    Mode& md = modes[i];
    const double omega = w2 > 0.0 ? std::sqrt(w2) : 0.0;
    if (omega <= opt.zero_tol) {
      md.omega = 0.0;
      md.zero_mode = true;
      md.u = Eigen::VectorXd::Zero(blk.A.rows());
      md.v = Eigen::VectorXd::Zero(blk.A.rows());
      continue;
    }
    md.omega = omega;
    // g = S phi / sqrt(w), f = (A-B) g / w; u = (f+g)/2, v = (f-g)/2
    const Eigen::VectorXd phi = es.eigenvectors().col(i);
    const Eigen::VectorXd g = S * phi / std::sqrt(omega);
    const Eigen::VectorXd f = (Ar - Br) * g / omega;
    md.u = Q * (0.5 * (f + g));
    md.v = Q * (0.5 * (f - g));
  }
  sort_by_omega(modes);
  return modes;
}

std::vector<Mode> diagonalize_modes_dense(const FluctuationBlock& blk,
                                          const DiagonalizeOptions& opt) {
  const Eigen::MatrixXd& Q = blk.basis;
  const Eigen::MatrixXd Ar = Q.transpose() * blk.A * Q;
  const Eigen::MatrixXd Br = Q.transpose() * blk.B * Q;
  const int M = int(Ar.rows());
  Eigen::MatrixXd L(2 * M, 2 * M);
  L << Ar, Br, -Br, -Ar;
  Eigen::EigenSolver<Eigen::MatrixXd> es(L);

  std::vector<Mode> modes;
  const double wscale =
      std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (int i = 0; i < 2 * M; ++i) {
    const std::complex<double> lam = es.eigenvalues()[i];
    if (std::abs(lam.imag()) > opt.stability_tol * wscale)
      throw DynamicallyUnstable("complex frequency " + std::to_string(lam.real()) +
                                " + " + std::to_string(lam.imag()) + "i");
    const double w = lam.real();
    if (w <= opt.zero_tol) continue;  // negative partners and zero modes
    Eigen::VectorXd uv = es.eigenvectors().col(i).real();
    if (es.eigenvectors().col(i).imag().cwiseAbs().maxCoeff() >
        1e-8 * uv.cwiseAbs().maxCoeff()) {
      // real eigenvalue with complex eigenvector pair: re-phase
      const std::complex<double> ph =
          es.eigenvectors().col(i)(0) /
          std::abs(es.eigenvectors().col(i)(0));
      uv = (es.eigenvectors().col(i) / ph).real();
    }
    Eigen::VectorXd u = uv.head(M), v = uv.tail(M);
    const double nrm = u.squaredNorm() - v.squaredNorm();
    if (nrm <= 0.0) continue;  // keep positive-norm representatives
    Mode md;
    md.omega = w;
    md.u = Q * (u / std::sqrt(nrm));
    md.v = Q * (v / std::sqrt(nrm));
    modes.push_back(md);
  }
  // zero modes detected by count deficit
  while (int(modes.size()) < M) {
    Mode md;
    md.zero_mode = true;
    md.u = Eigen::VectorXd::Zero(blk.A.rows());
    md.v = Eigen::VectorXd::Zero(blk.A.rows());
    modes.push_back(md);
  }
  sort_by_omega(modes);
  return modes;
}

}  // namespace qgw
