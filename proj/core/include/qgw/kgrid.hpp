#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace qgw {

/// One representative of a point-group orbit on the Brillouin-zone grid.
struct WedgePoint {
  std::array<int, 2> m{};   ///< integer momentum, k_i = 2 pi m_i / Ls
  double zk = 0.0;          ///< 2 sum_i cos k_i
  int multiplicity = 1;     ///< orbit size on the periodic grid
};

/// Momentum grid of the periodic lattice, reduced to the irreducible wedge
/// of the square-lattice point group (C4v for d = 2, inversion for d = 1).
/// k = pi is its own inversion partner on an even grid, so orbits are
/// counted directly on the torus.
struct KGrid {
  int Ls = 0;
  int dim = 2;
  std::vector<WedgePoint> wedge;

  std::int64_t volume() const;
  static KGrid make(int Ls, int dim);

  /// All grid points (full zone), for symmetry-expansion tests.
  static std::vector<std::array<int, 2>> full_grid(int Ls, int dim);

  static double zk_of(const std::array<int, 2>& m, int Ls, int dim);
};

}  // namespace qgw
