#pragma once

#include <cstdint>

namespace qgw {

/// Bose-Hubbard bath parameters plus the impurity coupling.
///
/// All energies are stored in units of the on-site interaction U, times in
/// units of hbar/U, and hbar == 1 throughout. `hopping` is J/U (per bond),
/// not the rescaled axis 2dJ/U used in phase-diagram plots.
struct BathParams {
  double hopping = 0.0;             ///< J/U, >= 0
  double interaction = 1.0;         ///< U in units of U; kept explicit
  double chemical_potential = 0.0;  ///< mu/U
  int dimension = 2;                ///< 1 or 2
  int linear_size = 64;             ///< Ls, even and >= 4
  int fock_cutoff = 6;              ///< n_max, >= 2
  double impurity_coupling = 0.001; ///< g/U
  double impurity_frequency = 0.0;  ///< omega0 (enters only as a phase)

  int coordination() const { return 2 * dimension; }          // z
  std::int64_t volume() const;                                // Ls^d
  double scaled_hopping() const { return coordination() * hopping; } // 2dJ/U

  /// Set J/U from the phase-diagram axis 2dJ/U.
  void set_scaled_hopping(double two_d_J_over_U) {
    hopping = two_d_J_over_U / coordination();
  }

  /// Throws InvalidParams when an invariant is violated.
  void validate() const;
};

}  // namespace qgw
