#pragma once

#include <vector>

#include "qgw/dephasing_rates.hpp"
#include "qgw/fits.hpp"

namespace qgw {

enum class BathKind {
  free_continuum,
  free_lattice,
  weakly_interacting_continuum,
  weakly_interacting_lattice,
};

/// Closed-form oracle bath: free bosons or Bogoliubov gases, on the lattice
/// or on the continuum, used to validate the full pipeline's asymptotics.
struct OracleBath {
  BathKind kind = BathKind::free_lattice;
  int dimension = 1;
  double hopping = 1.0;      ///< J (lattice kinds)
  double mass = 1.0;         ///< m (continuum kinds)
  double rho0 = 1.0;         ///< condensate density (weakly interacting)
  double interaction = 1.0;  ///< U (weakly interacting)

  void validate() const;  ///< throws InvalidParams / Unsupported
};

/// Reference dephasing rate on the grid. Closed forms:
///   free lattice 1D:    t [sin(2Jt) J1(2Jt) + cos(2Jt) J0(2Jt)]
///   free continuum d:   t^{(2-d)/2}            (0 < d < 4)
///   free lattice d>1:   t^{(2-d)/2}            (coarse-grained)
///   weakly int. (any):  t^{-d}                 (late-time envelope)
/// Power-law kinds carry unit amplitude; the exponent is the content.
std::vector<double> oracle_gamma(const OracleBath& bath, const TimeGrid& g);

/// Direct momentum-sum evaluation for lattice kinds on an nk^d grid
/// (free: N^2 = 1, omega = eps(k); weakly interacting Bogoliubov:
/// N^2 = rho0 eps/omega, omega = sqrt(eps(eps + 2 rho0 U))).
std::vector<double> oracle_gamma_momentum_sum(const OracleBath& bath,
                                              const TimeGrid& g, int nk);

/// Closed-form spectral densities J(omega) per kind.
std::vector<double> oracle_spectral_density(const OracleBath& bath,
                                            const std::vector<double>& omega);

/// Van Hove frequency of the 1D weakly-interacting lattice bath,
/// sqrt(2J(2J + 2 rho0 U)).
double van_hove_frequency(const OracleBath& bath);

/// Log-log least-squares exponent over [t_lo, t_hi].
/// Throws NonPositive when the series changes sign inside the window.
PowerLawFit asymptotic_exponent(std::span<const double> t,
                                std::span<const double> y, double t_lo,
                                double t_hi);

}  // namespace qgw
