#include "qgw/kgrid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace qgw {

std::int64_t KGrid::volume() const {
  std::int64_t v = 1;
  for (int i = 0; i < dim; ++i) v *= Ls;
  return v;
}

double KGrid::zk_of(const std::array<int, 2>& m, int Ls, int dim) {
  double z = 0.0;
  for (int i = 0; i < dim; ++i)
    z += 2.0 * std::cos(2.0 * std::numbers::pi * m[i] / Ls);
  return z;
}

std::vector<std::array<int, 2>> KGrid::full_grid(int Ls, int dim) {
  std::vector<std::array<int, 2>> pts;
  if (dim == 1) {
    for (int mx = 0; mx < Ls; ++mx) pts.push_back({mx, 0});
  } else {
    for (int mx = 0; mx < Ls; ++mx)
      for (int my = 0; my < Ls; ++my) pts.push_back({mx, my});
  }
  return pts;
}

KGrid KGrid::make(int Ls, int dim) {
  KGrid g;
  g.Ls = Ls;
  g.dim = dim;
  auto mod = [Ls](int x) { return ((x % Ls) + Ls) % Ls; };
  if (dim == 1) {
    for (int mx = 0; mx <= Ls / 2; ++mx) {
      std::set<int> orbit{mod(mx), mod(-mx)};
      g.wedge.push_back({{mx, 0}, zk_of({mx, 0}, Ls, 1), int(orbit.size())});
    }
    return g;
  }
  // d = 2: wedge 0 <= my <= mx <= Ls/2; orbit under the 8 C4v elements,
  // counted on the torus so zone-boundary identifications come out right
  for (int mx = 0; mx <= Ls / 2; ++mx) {
    for (int my = 0; my <= mx; ++my) {
      std::set<std::array<int, 2>> orbit;
      const int xs[2] = {mx, -mx}, ys[2] = {my, -my};
      for (int sx : xs)
        for (int sy : ys) {
          orbit.insert({mod(sx), mod(sy)});
          orbit.insert({mod(sy), mod(sx)});
        }
      g.wedge.push_back({{mx, my}, zk_of({mx, my}, Ls, 2), int(orbit.size())});
    }
  }
  return g;
}

}  // namespace qgw
