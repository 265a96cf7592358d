#include "qgw/gutzwiller.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qgw/errors.hpp"

namespace qgw {

Eigen::VectorXd onsite_energies(const BathParams& p) {
  const int N = p.fock_cutoff + 1;
  Eigen::VectorXd H(N);
  for (int n = 0; n < N; ++n)
    H[n] = 0.5 * p.interaction * n * (n - 1) - p.chemical_potential * n;
  return H;
}

Eigen::MatrixXd lowering_operator(int n_max) {
  const int N = n_max + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(N, N);
  for (int n = 1; n < N; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Eigen::MatrixXd mean_field_hamiltonian(const BathParams& p, double psi) {
  const int N = p.fock_cutoff + 1;
  Eigen::MatrixXd h = onsite_energies(p).asDiagonal();
  const double Jz = p.hopping * p.coordination();
  for (int n = 1; n < N; ++n) {
    const double t = -Jz * psi * std::sqrt(double(n));
    h(n - 1, n) += t;
    h(n, n - 1) += t;
  }
  return h;
}

namespace {

double order_parameter_of(const Eigen::VectorXd& c) {
  double psi = 0.0;
  for (int n = 1; n < c.size(); ++n) psi += std::sqrt(double(n)) * c[n - 1] * c[n];
  return psi;
}

/// Ground eigenpair of h(psi); sign fixed so that psi(c) >= 0.
void ground_state_of(const Eigen::MatrixXd& h, Eigen::VectorXd& c, double& lam) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  lam = es.eigenvalues()[0];
  c = es.eigenvectors().col(0);
  if (order_parameter_of(c) < 0.0) c = -c;
  // in the Mott case psi(c) == 0; fix the global sign by the largest entry
  int imax = 0;
  c.cwiseAbs().maxCoeff(&imax);
  if (c[imax] < 0.0) c = -c;
}

}  // namespace

double gutzwiller_energy(const BathParams& p, const Eigen::VectorXd& c) {
  const Eigen::VectorXd H = onsite_energies(p);
  const double psi = order_parameter_of(c);
  return -p.hopping * p.coordination() * psi * psi + H.dot(c.cwiseProduct(c));
}

GutzwillerState solve_ground_state(const BathParams& p, const SolverOptions& opt) {
  p.validate();
  GutzwillerState st;
  st.params = p;

  double psi = 1.0;  // generic superfluid seed; decays to 0 inside the lobe
  Eigen::VectorXd c;
  double lam = 0.0;
  double residual = 0.0;
  long it = 0;
  for (; it < opt.max_iterations; ++it) {
    ground_state_of(mean_field_hamiltonian(p, psi), c, lam);
    const double psi_c = std::abs(order_parameter_of(c));
    const double psi_next = (1.0 - opt.damping) * psi + opt.damping * psi_c;
    residual = std::abs(psi_next - psi);
    if (opt.keep_energy_trace) st.energy_trace.push_back(gutzwiller_energy(p, c));
    psi = psi_next;
    if (residual < opt.tol) break;
    if (psi < 0.25 * opt.sf_threshold) break;  // collapsing to Mott
  }
  st.iterations = it;
  st.residual = residual;
  st.converged = residual < opt.tol || psi < 0.25 * opt.sf_threshold;
  if (!st.converged && opt.throw_on_no_convergence) {
    char msg[96];
    std::snprintf(msg, sizeof msg,
                  "gutzwiller iteration cap hit, residual = %.3e", residual);
    throw NoConvergence(msg);
  }

  if (psi < opt.sf_threshold) psi = 0.0;  // exact Mott representative
  ground_state_of(mean_field_hamiltonian(p, psi), c, lam);
  // converge the amplitudes at the final psi (one extra pass keeps the
  // self-consistency residual of c itself below tol as well)
  st.order_parameter = psi == 0.0 ? 0.0 : std::abs(order_parameter_of(c));
  st.amplitudes = c;
  st.lagrange_multiplier = lam;
  Eigen::VectorXd n = Eigen::VectorXd::LinSpaced(p.fock_cutoff + 1, 0, p.fock_cutoff);
  st.density = n.dot(c.cwiseProduct(c));
  st.energy_per_site = gutzwiller_energy(p, c);
  st.top_weight = c[p.fock_cutoff] * c[p.fock_cutoff];
  st.truncation_ok = st.top_weight < opt.truncation_tol;
  if (!st.truncation_ok && opt.throw_on_under_truncation)
    throw UnderTruncated("top Fock weight " + std::to_string(st.top_weight) +
                         " exceeds tolerance");
  return st;
}

}  // namespace qgw
