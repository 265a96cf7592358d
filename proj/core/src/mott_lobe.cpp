#include "qgw/mott_lobe.hpp"

#include <cmath>
#include <string>

#include "qgw/errors.hpp"

namespace qgw {

double mott_boundary_analytic(double mu, int n) {
  if (!(mu > n - 1 && mu < n))
    throw OutOfLobe("mu/U = " + std::to_string(mu) + " outside lobe n = " +
                    std::to_string(n));
  return (n - mu) * (mu - n + 1) / (mu + 1);
}

namespace {

bool is_superfluid_at(double two_dJ, double mu, const BoundaryOptions& opt) {
  BathParams p;
  p.chemical_potential = mu;
  p.fock_cutoff = opt.fock_cutoff;
  p.set_scaled_hopping(two_dJ);
  SolverOptions sopt = opt.solver;
  // near criticality the damped map stalls; classify the best iterate
  sopt.throw_on_no_convergence = false;
  return solve_ground_state(p, sopt).superfluid();
}

}  // namespace

double mott_boundary(double mu, int n, const BoundaryOptions& opt) {
  if (!(mu > n - 1 && mu < n))
    throw OutOfLobe("mu/U = " + std::to_string(mu) + " outside lobe n = " +
                    std::to_string(n));
  // bracket around the analytic estimate; the lobe is a single interval in J
  double hi = 1.5 * mott_boundary_analytic(mu, n) + 1e-3;
  while (!is_superfluid_at(hi, mu, opt)) hi *= 1.5;
  double lo = 0.0;
  while (hi - lo > opt.tol) {
    const double mid = 0.5 * (lo + hi);
    (is_superfluid_at(mid, mu, opt) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

MuForDensityResult find_mu_for_density(BathParams params, double target,
                                       const MuForDensityOptions& opt) {
  MuForDensityResult out;
  if (params.hopping == 0.0) {
    // n0(mu) is an exact step function with plateaus mu/U in (n-1, n)
    const double r = std::round(target);
    if (std::abs(target - r) > 1e-12 || r < 1.0)
      throw NoBracket("at J = 0 only integer fillings >= 1 occur");
    out.mu = params.interaction * (r - 0.5);  // plateau midpoint
    out.density = r;
    out.plateau = true;
    return out;
  }
  auto density_at = [&](double mu) {
    params.chemical_potential = mu;
    return solve_ground_state(params, opt.solver).density;
  };
  double lo = opt.mu_lo, hi = opt.mu_hi;
  double flo = density_at(lo) - target;
  double fhi = density_at(hi) - target;
  int guard = 0;
  while (flo > 0.0 && lo > -50.0) { lo -= 2.0; flo = density_at(lo) - target; }
  while (fhi < 0.0 && ++guard < 32) { hi += 4.0; fhi = density_at(hi) - target; }
  if (flo > 0.0 || fhi < 0.0)
    throw NoBracket("target filling not bracketed in the search window");
  // n0(mu) is monotone at fixed J in the SF phase; plain bisection
  double mid = 0.5 * (lo + hi), fmid = 0.0;
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    fmid = density_at(mid) - target;
    if (std::abs(fmid) < opt.tol) break;
    (fmid > 0.0 ? hi : lo) = mid;
  }
  if (std::abs(fmid) > opt.tol)
    throw NoBracket("density root-find stalled: residual " + std::to_string(fmid));
  out.mu = mid;
  out.density = fmid + target;
  out.plateau = false;
  return out;
}

}  // namespace qgw
