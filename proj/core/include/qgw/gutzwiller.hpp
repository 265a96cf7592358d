#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qgw/bath_params.hpp"

namespace qgw {

struct SolverOptions {
  double damping = 0.5;        ///< update mixing for the psi iteration
  double tol = 1e-12;          ///< |psi_{k+1} - psi_k| stopping criterion
  long max_iterations = 100000;
  double sf_threshold = 1e-7;  ///< psi below this => Mott (psi set to 0 exactly)
  double truncation_tol = 1e-10;  ///< max allowed (c_{n_max})^2
  bool throw_on_under_truncation = false;
  /// off: a capped iteration returns its best iterate flagged unconverged
  /// (the boundary bisection classifies stalled near-critical points this way)
  bool throw_on_no_convergence = true;
  bool keep_energy_trace = false;
};

/// Converged homogeneous Gutzwiller mean-field state.
struct GutzwillerState {
  BathParams params;
  Eigen::VectorXd amplitudes;      ///< c0_n, real, unit norm, length n_max+1
  double order_parameter = 0.0;    ///< psi = sum_n sqrt(n) c_{n-1} c_n, >= 0
  double density = 0.0;            ///< n0 = sum_n n c_n^2
  double energy_per_site = 0.0;    ///< E0 = -Jz psi^2 + sum_n H_n c_n^2
  double lagrange_multiplier = 0.0;///< ground eigenvalue of h(psi)
  bool converged = false;
  double residual = 0.0;
  long iterations = 0;
  bool truncation_ok = true;
  double top_weight = 0.0;         ///< (c_{n_max})^2
  std::vector<double> energy_trace;///< filled when keep_energy_trace is set

  bool superfluid() const { return order_parameter > 0.0; }
};

/// On-site Fock matrix elements H_n = (U/2) n(n-1) - mu n.
Eigen::VectorXd onsite_energies(const BathParams& p);

/// Matrix of the lowering operator a in the truncated Fock basis.
Eigen::MatrixXd lowering_operator(int n_max);

/// Single-site mean-field Hamiltonian h(psi) = diag(H_n) - Jz psi (a + a^T).
Eigen::MatrixXd mean_field_hamiltonian(const BathParams& p, double psi);

/// Minimizes E[c] = -Jz psi(c)^2 + sum_n H_n c_n^2 on the unit sphere by
/// damped self-consistent diagonalization of h(psi).
GutzwillerState solve_ground_state(const BathParams& p,
                                   const SolverOptions& opt = {});

/// Energy functional evaluated at arbitrary real amplitudes (not necessarily
/// normalized inputs are the caller's responsibility).
double gutzwiller_energy(const BathParams& p, const Eigen::VectorXd& c);

}  // namespace qgw
