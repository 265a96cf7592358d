#pragma once

#include "qgw/bath_params.hpp"
#include "qgw/gutzwiller.hpp"

namespace qgw {

/// Mean-field stability boundary of the Mott lobe with filling n:
///   (2dJ/U)_c = (n - mu)(mu - n + 1)/(mu + 1),  mu in units of U.
/// Used as the closed-form oracle for the bisection search.
double mott_boundary_analytic(double mu_over_U, int lobe);

struct BoundaryOptions {
  int fock_cutoff = 8;
  double tol = 1e-7;          ///< bisection width in 2dJ/U
  SolverOptions solver = {};
};

/// Critical 2dJ/U at which psi first becomes nonzero, located by bisection
/// on solve_ground_state with the solver's psi-threshold detection.
double mott_boundary(double mu_over_U, int lobe, const BoundaryOptions& opt = {});

struct MuForDensityOptions {
  double tol = 1e-8;          ///< |n0 - target| convergence
  double mu_lo = -2.0;        ///< initial search window, units of U
  double mu_hi = 12.0;
  SolverOptions solver = {};
};

struct MuForDensityResult {
  double mu = 0.0;
  double density = 0.0;
  bool plateau = false;  ///< J = 0 step function; mu is the plateau midpoint
};

/// mu such that the ground-state filling matches `target` at fixed J,
/// by bracketing root-find on the monotone n0(mu).
MuForDensityResult find_mu_for_density(BathParams params, double target,
                                       const MuForDensityOptions& opt = {});

}  // namespace qgw
