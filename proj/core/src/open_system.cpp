#include "qgw/open_system.hpp"

#include <cmath>
#include <string>

#include "qgw/errors.hpp"

namespace qgw {

bool ImpurityState::hermitian(double tol) const {
  return std::abs(rho12 - std::conj(rho21)) < tol &&
         std::abs(rho11.imag()) < tol && std::abs(rho22.imag()) < tol;
}

bool ImpurityState::positive_semidefinite(double tol) const {
  return rho11.real() >= -tol && rho22.real() >= -tol &&
         std::norm(rho12) <= rho11.real() * rho22.real() + tol;
}

void ImpurityState::validate() const {
  if (std::abs(trace() - 1.0) > 1e-10)
    throw InvalidState("trace != 1");
  if (!hermitian(1e-10)) throw InvalidState("not Hermitian");
  if (!positive_semidefinite(1e-10))
    throw InvalidState("not positive semi-definite");
}

std::vector<double> loschmidt_echo(const std::vector<double>& Gamma, double g) {
  std::vector<double> L(Gamma.size());
  for (std::size_t i = 0; i < Gamma.size(); ++i)
    L[i] = std::exp(-2.0 * g * g * Gamma[i]);
  return L;
}

ImpurityTrajectory evolve_impurity(const ImpurityState& rho0, const TimeGrid& g,
                                   const std::vector<double>& echo,
                                   double omega_tilde, bool include_phase) {
  rho0.validate();
  ImpurityTrajectory tr;
  tr.grid = g;
  tr.rho.resize(echo.size());
  for (std::size_t i = 0; i < echo.size(); ++i) {
    ImpurityState s = rho0;
    const double damp = std::sqrt(std::max(echo[i], 0.0));
    std::complex<double> phase{1.0, 0.0};
    if (include_phase) {
      const double th = -omega_tilde * g.t(int(i));
      phase = {std::cos(th), std::sin(th)};
    }
    s.rho12 = rho0.rho12 * damp * phase;
    s.rho21 = std::conj(s.rho12);
    const double excess =
        std::norm(s.rho12) - s.rho11.real() * s.rho22.real();
    if (excess > tr.worst_violation) tr.worst_violation = excess;
    tr.rho[i] = s;
  }
  tr.positivity_ok = tr.worst_violation <= 1e-12;
  return tr;
}

MarkovianityReport blp_measures(const TimeGrid& g, const std::vector<double>& gamma,
                                const std::vector<double>& echo, double coupling_g,
                                const BlpOptions& opt) {
  if (gamma.size() != echo.size() || gamma.size() != std::size_t(g.n))
    throw InvalidState("blp_measures: series not aligned with the grid");
  (void)coupling_g;  // echo already carries the coupling; kept for the interface

  MarkovianityReport rep;
  auto sqrtL = [&](std::size_t i) { return std::sqrt(std::max(echo[i], 0.0)); };
  auto sgn = [&](double x) { return std::abs(x) < opt.dead_band ? 0 : (x > 0 ? 1 : -1); };

  int cur = 0;              // sign of the running interval; 0 until decided
  double seg_t = 0.0;       // interval start time
  double seg_e = sqrtL(0);  // sqrt(L) at interval start
  rep.interval_echo.push_back(seg_e);

  auto close = [&](int sign, double t1, double e1) {
    if (sign < 0) {
      rep.N_minus += e1 - seg_e;
      rep.negative_intervals.emplace_back(seg_t, t1);
    } else {
      rep.N_plus += seg_e - e1;
    }
    rep.interval_echo.push_back(e1);
    seg_t = t1;
    seg_e = e1;
  };

  for (std::size_t i = 1; i < gamma.size(); ++i) {
    const int s = sgn(gamma[i]);
    if (s == 0) continue;       // dead band extends the running interval
    if (cur == 0) { cur = s; continue; }
    if (s == cur) continue;
    // sign change inside (t_{i-1}, t_i]: locate the zero by linear interpolation
    const double g0 = gamma[i - 1], g1 = gamma[i];
    double frac = 0.5;
    if (std::abs(g1 - g0) > 0.0) frac = g0 / (g0 - g1);
    frac = std::min(1.0, std::max(0.0, frac));
    const double tz = g.t(int(i - 1)) + frac * g.dt;
    const double ez = sqrtL(i - 1) + frac * (sqrtL(i) - sqrtL(i - 1));
    close(cur, tz, ez);
    cur = s;
  }
  close(cur == 0 ? 1 : cur, g.t(g.n - 1), sqrtL(gamma.size() - 1));
  rep.sqrtL_end = sqrtL(gamma.size() - 1);

  if (rep.N_plus == 0.0 && rep.N_minus > 0.0)
    throw DegenerateEcho("N+ = 0 with N- = " + std::to_string(rep.N_minus));
  rep.R = rep.N_minus == 0.0 ? 0.0 : rep.N_minus / rep.N_plus;
  return rep;
}

}  // namespace qgw
