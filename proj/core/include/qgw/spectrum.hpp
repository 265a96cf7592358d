#pragma once

#include <string>
#include <vector>

#include "qgw/bogoliubov.hpp"
#include "qgw/gutzwiller.hpp"
#include "qgw/kgrid.hpp"

namespace qgw {

/// Bogoliubov spectrum on the symmetry-reduced momentum grid.
///
/// Per wedge representative, `modes[w][b]` holds branch b sorted ascending
/// in omega; orbit multiplicities live in grid.wedge. Full-zone sums are
/// sum_w mult_w sum_b f(mode), since A, B depend on k only through zk.
struct ExcitationSpectrum {
  GutzwillerState state;
  KGrid grid;
  std::vector<std::vector<Mode>> modes;

  int branches() const { return state.params.fock_cutoff; }
  const Mode& at(int wedge_index, int branch) const {
    return modes[wedge_index][branch];
  }

  /// Lowest-branch frequency at the zone corner (pi, .., pi).
  double goldstone_band_edge() const;
  /// tau_G = 2 pi / omega_{0, corner}: oscillation scale of gamma(t).
  double tau_g() const;
  double max_frequency() const;

  /// Lowest nonzero frequencies of branch 0/1 over the grid (gap probes).
  double min_frequency(int branch) const;
};

struct SpectrumOptions {
  DiagonalizeOptions diag = {};
  bool branch_continuity = true;  ///< relabel degenerate branches smoothly in zk
};

ExcitationSpectrum compute_spectrum(const GutzwillerState& state,
                                    const SpectrumOptions& opt = {});

/// Full-grid (no symmetry reduction) spectrum, for expansion-exactness tests.
/// Every grid point appears with multiplicity 1.
ExcitationSpectrum compute_spectrum_full(const GutzwillerState& state,
                                         const SpectrumOptions& opt = {});

/// Binary cache: little-endian float64 arrays (omega, u, v per mode) next to
/// a JSON sidecar with dimensions and the parameter hash.
void save_spectrum(const ExcitationSpectrum& sp, const std::string& path_prefix);
bool load_spectrum(ExcitationSpectrum& sp, const GutzwillerState& state,
                   const std::string& path_prefix);

/// Hash of the physical parameters that determine a spectrum.
std::uint64_t spectrum_param_hash(const BathParams& p);

}  // namespace qgw
