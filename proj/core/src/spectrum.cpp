#include "qgw/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

#include "qgw/errors.hpp"

namespace qgw {

namespace {

/// Relabel branches at one wedge point to maximize overlap with the previous
/// point, within near-degenerate frequency clusters only.
void smooth_branch_labels(const std::vector<Mode>& prev, std::vector<Mode>& cur) {
  const int nb = int(cur.size());
  for (int b = 0; b + 1 < nb; ++b) {
    if (cur[b].zero_mode || cur[b + 1].zero_mode) continue;
    const double gap = cur[b + 1].omega - cur[b].omega;
    if (gap > 1e-6 * std::max(1.0, cur[b + 1].omega)) continue;
    if (prev[b].zero_mode) continue;
    const double keep = std::abs(prev[b].u.dot(cur[b].u) - prev[b].v.dot(cur[b].v));
    const double swap = std::abs(prev[b].u.dot(cur[b + 1].u) - prev[b].v.dot(cur[b + 1].v));
    if (swap > keep) std::swap(cur[b], cur[b + 1]);
  }
  for (int b = 0; b < nb; ++b) cur[b].branch = b;
}

std::vector<std::vector<Mode>> diagonalize_over(
    const GutzwillerState& state, const std::vector<WedgePoint>& pts,
    const SpectrumOptions& opt) {
  std::vector<std::vector<Mode>> out(pts.size());
  std::string error;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t w = 0; w < pts.size(); ++w) {
    try {
      out[w] = diagonalize_modes(
          build_fluctuation_block_zk(state, pts[w].zk), opt.diag);
    } catch (const Error& e) {
#pragma omp critical
      error = "k-index (" + std::to_string(pts[w].m[0]) + "," +
              std::to_string(pts[w].m[1]) + "): " + e.what();
    }
  }
  if (!error.empty()) throw DynamicallyUnstable(error);
  return out;
}

}  // namespace

ExcitationSpectrum compute_spectrum(const GutzwillerState& state,
                                    const SpectrumOptions& opt) {
  ExcitationSpectrum sp;
  sp.state = state;
  sp.grid = KGrid::make(state.params.linear_size, state.params.dimension);
  sp.modes = diagonalize_over(state, sp.grid.wedge, opt);
  if (opt.branch_continuity) {
    // order wedge points by zk and sweep once for label smoothness
    std::vector<std::size_t> idx(sp.grid.wedge.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return sp.grid.wedge[a].zk < sp.grid.wedge[b].zk;
    });
    for (std::size_t i = 1; i < idx.size(); ++i)
      smooth_branch_labels(sp.modes[idx[i - 1]], sp.modes[idx[i]]);
  }
  return sp;
}

ExcitationSpectrum compute_spectrum_full(const GutzwillerState& state,
                                         const SpectrumOptions& opt) {
  ExcitationSpectrum sp;
  sp.state = state;
  sp.grid.Ls = state.params.linear_size;
  sp.grid.dim = state.params.dimension;
  for (const auto& m : KGrid::full_grid(sp.grid.Ls, sp.grid.dim))
    sp.grid.wedge.push_back({m, KGrid::zk_of(m, sp.grid.Ls, sp.grid.dim), 1});
  sp.modes = diagonalize_over(state, sp.grid.wedge, opt);
  return sp;
}

double ExcitationSpectrum::goldstone_band_edge() const {
  const int half = grid.Ls / 2;
  for (std::size_t w = 0; w < grid.wedge.size(); ++w) {
    bool corner = true;
    for (int i = 0; i < grid.dim; ++i)
      corner = corner && (grid.wedge[w].m[i] == half);
    if (corner) return modes[w][0].omega;
  }
  return 0.0;
}

double ExcitationSpectrum::tau_g() const {
  const double w = goldstone_band_edge();
  return w > 0.0 ? 2.0 * std::numbers::pi / w : std::numeric_limits<double>::infinity();
}

double ExcitationSpectrum::max_frequency() const {
  double m = 0.0;
  for (const auto& pm : modes)
    for (const auto& md : pm) m = std::max(m, md.omega);
  return m;
}

double ExcitationSpectrum::min_frequency(int branch) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& pm : modes) {
    const Mode& md = pm[branch];
    if (!md.zero_mode) m = std::min(m, md.omega);
  }
  return m;
}

std::uint64_t spectrum_param_hash(const BathParams& p) {
  auto mix = [](std::uint64_t h, std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  };
  auto dbl = [](double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof u);
    return u;
  };
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = mix(h, dbl(p.hopping));
  h = mix(h, dbl(p.interaction));
  h = mix(h, dbl(p.chemical_potential));
  h = mix(h, std::uint64_t(p.dimension));
  h = mix(h, std::uint64_t(p.linear_size));
  h = mix(h, std::uint64_t(p.fock_cutoff));
  return h;
}

void save_spectrum(const ExcitationSpectrum& sp, const std::string& prefix) {
  const int N = sp.state.params.fock_cutoff + 1;
  std::ofstream bin(prefix + ".f64", std::ios::binary);
  std::size_t nmodes = 0;
  for (const auto& pm : sp.modes)
    for (const auto& md : pm) {
      ++nmodes;
      bin.write(reinterpret_cast<const char*>(&md.omega), sizeof(double));
      bin.write(reinterpret_cast<const char*>(md.u.data()), N * sizeof(double));
      bin.write(reinterpret_cast<const char*>(md.v.data()), N * sizeof(double));
    }
  bin.close();
  nlohmann::json meta;
  meta["param_hash"] = spectrum_param_hash(sp.state.params);
  meta["Ls"] = sp.grid.Ls;
  meta["dim"] = sp.grid.dim;
  meta["fock_states"] = N;
  meta["wedge_points"] = sp.grid.wedge.size();
  meta["branches"] = sp.branches();
  meta["modes"] = nmodes;
  meta["record_doubles"] = 1 + 2 * N;
  std::ofstream(prefix + ".json") << meta.dump(2) << "\n";
}

bool load_spectrum(ExcitationSpectrum& sp, const GutzwillerState& state,
                   const std::string& prefix) {
  std::ifstream mf(prefix + ".json");
  if (!mf) return false;
  nlohmann::json meta;
  mf >> meta;
  if (meta.value("param_hash", std::uint64_t(0)) != spectrum_param_hash(state.params))
    return false;
  const int N = state.params.fock_cutoff + 1;
  if (meta.value("fock_states", 0) != N) return false;
  sp.state = state;
  sp.grid = KGrid::make(state.params.linear_size, state.params.dimension);
  if (meta.value("wedge_points", std::size_t(0)) != sp.grid.wedge.size()) return false;
  std::ifstream bin(prefix + ".f64", std::ios::binary);
  if (!bin) return false;
  sp.modes.assign(sp.grid.wedge.size(), {});
  const int nb = state.params.fock_cutoff;
  for (auto& pm : sp.modes) {
    pm.resize(nb);
    for (int b = 0; b < nb; ++b) {
      Mode& md = pm[b];
      md.branch = b;
      md.u.resize(N);
      md.v.resize(N);
      bin.read(reinterpret_cast<char*>(&md.omega), sizeof(double));
      bin.read(reinterpret_cast<char*>(md.u.data()), N * sizeof(double));
      bin.read(reinterpret_cast<char*>(md.v.data()), N * sizeof(double));
      md.zero_mode = md.omega == 0.0;
    }
  }
  return bool(bin);
}

}  // namespace qgw
