#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgw/dephasing_rates.hpp"

namespace qgw {

enum class Scenario {
  edge_path,        ///< mu/U pinned to 0.8 (incommensurate crossing)
  tip_path,         ///< mu/U pinned to sqrt(2) - 1 (fixed-density crossing)
  constant_density, ///< mu solved per point from the target filling
  single_point,
  oracle_suite,     ///< reference-bath table instead of the lattice pipeline
};

Scenario scenario_from_string(const std::string& s);
std::string to_string(Scenario s);

/// Declarative description of a batch run. Parsed from a flat key = value
/// document with dotted namespaces; unknown keys are rejected.
struct ScanConfig {
  Scenario scenario = Scenario::single_point;
  std::vector<double> hopping;      ///< 2dJ/U per scan point
  std::optional<double> mu;         ///< mu/U (scenario default if unset)
  std::optional<double> filling;    ///< constant-density target
  int Ls = 64;
  int n_max = 6;
  int dimension = 2;
  double g = 0.001;                 ///< impurity coupling g/U
  double t_max = 200.0;
  double dt = 0.01;
  double omega_bin = 0.005;
  std::string output_dir = "out";
  int parallelism = 0;              ///< 0 = hardware concurrency
  std::string gamma2_mode = "auto"; ///< direct | factorized | auto
  bool two_particle = true;
  double truncation_tol = 1e-10;
  bool resume = true;

  static ScanConfig parse_file(const std::string& path);
  static ScanConfig parse(const std::string& text);

  /// Sorted key = value rendering; basis of the config hash.
  std::string canonical() const;
  std::uint64_t hash() const;

  double effective_mu() const;      ///< scenario defaults applied
  TimeGrid time_grid() const { return TimeGrid::over(t_max, dt); }
  Gamma2Mode gamma2() const;
  void validate() const;
};

std::uint64_t fnv1a(const std::string& s);

}  // namespace qgw
