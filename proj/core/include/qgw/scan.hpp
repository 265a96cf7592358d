#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgw/scan_config.hpp"

namespace qgw {

/// Everything persisted about one scan point; reproducible from the config
/// (hashes embedded) plus the code version.
struct ScanRecord {
  int index = 0;
  bool ok = false;
  std::string error;

  double hopping2d = 0.0;  ///< 2dJ/U
  double mu = 0.0;
  std::optional<double> filling_target;
  double psi = 0.0, n0 = 0.0, energy = 0.0;
  bool truncation_ok = true;
  double top_weight = 0.0;

  double gap0 = 0.0, gap1 = 0.0;  ///< min nonzero frequency of branches 0, 1
  double goldstone_edge = 0.0, tau_g = 0.0;

  double lambda1 = 0.0, lambda2 = 0.0;
  std::optional<double> spectral_exponent;
  std::optional<double> eta;  ///< Markov plateau value when detected
  double N_minus = 0.0, N_plus = 0.0, R = 0.0;

  std::string dir, rates_csv, echo_csv, spectral_csv, report_json;
  double seconds = 0.0;
  std::uint64_t config_hash = 0, point_hash = 0;
  bool resumed = false;
};

struct ScanResult {
  std::vector<ScanRecord> records;
  int failures = 0;
  std::string output_dir;
  std::string index_file;
};

/// Output root: $QGW_OUTPUT_ROOT/<config.output_dir> when the variable is
/// set, else config.output_dir.
std::string resolve_output_dir(const ScanConfig& cfg);

/// Pipeline per point: ground state -> spectrum -> weights -> rates ->
/// echo -> BLP; series persisted as CSV, report as JSON; deterministic for a
/// given config. Per-point failures are recorded and skipped.
ScanResult run_scan(const ScanConfig& cfg);

/// Reference-bath suite: closed forms, momentum sums, exponent fits.
ScanResult run_oracle_suite(const ScanConfig& cfg);

/// Publication-style SVG figures from scan records. Returns files written;
/// empty record set writes nothing. Throws MissingSeries when a record
/// references series files that are gone.
std::vector<std::string> emit_plots(const std::vector<ScanRecord>& records,
                                    const std::string& out_dir);

/// Round-trip helpers for scan_index.json.
void write_scan_index(const ScanResult& result, const ScanConfig& cfg);
std::vector<ScanRecord> load_scan_index(const std::string& index_file);

}  // namespace qgw
