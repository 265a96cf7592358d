#include "qgw/scan_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qgw/csv.hpp"
#include "qgw/errors.hpp"

namespace qgw {

Scenario scenario_from_string(const std::string& s) {
  if (s == "edge-path") return Scenario::edge_path;
  if (s == "tip-path") return Scenario::tip_path;
  if (s == "constant-density") return Scenario::constant_density;
  if (s == "single-point") return Scenario::single_point;
  if (s == "oracle-suite") return Scenario::oracle_suite;
  throw ConfigError("unknown scenario '" + s + "'");
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::edge_path: return "edge-path";
    case Scenario::tip_path: return "tip-path";
    case Scenario::constant_density: return "constant-density";
    case Scenario::single_point: return "single-point";
    case Scenario::oracle_suite: return "oracle-suite";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  const auto b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    if (!cell.empty()) out.push_back(std::stod(cell));
  }
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("expected boolean, got '" + v + "'");
}

}  // namespace

ScanConfig ScanConfig::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

ScanConfig ScanConfig::parse(const std::string& text) {
  ScanConfig cfg;
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value': " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  std::optional<double> hop_min, hop_max;
  int hop_count = 0;
  for (const auto& [k, v] : kv) {
    if (k == "scan.scenario") cfg.scenario = scenario_from_string(v);
    else if (k == "scan.hopping") cfg.hopping = parse_list(v);
    else if (k == "scan.hopping.min") hop_min = std::stod(v);
    else if (k == "scan.hopping.max") hop_max = std::stod(v);
    else if (k == "scan.hopping.count") hop_count = std::stoi(v);
    else if (k == "scan.mu") cfg.mu = std::stod(v);
    else if (k == "scan.filling") cfg.filling = std::stod(v);
    else if (k == "lattice.size") cfg.Ls = std::stoi(v);
    else if (k == "lattice.nmax") cfg.n_max = std::stoi(v);
    else if (k == "lattice.dimension") cfg.dimension = std::stoi(v);
    else if (k == "impurity.g") cfg.g = std::stod(v);
    else if (k == "time.max") cfg.t_max = std::stod(v);
    else if (k == "time.dt") cfg.dt = std::stod(v);
    else if (k == "spectral.bin") cfg.omega_bin = std::stod(v);
    else if (k == "output.dir") cfg.output_dir = v;
    else if (k == "run.parallelism") cfg.parallelism = std::stoi(v);
    else if (k == "run.gamma2") cfg.gamma2_mode = v;
    else if (k == "run.two_particle") cfg.two_particle = parse_bool(v);
    else if (k == "run.resume") cfg.resume = parse_bool(v);
    else if (k == "solver.truncation_tol") cfg.truncation_tol = std::stod(v);
    else throw ConfigError("unknown config key '" + k + "'");
  }
  if (hop_min && hop_max && hop_count > 1) {
    cfg.hopping.clear();
    for (int i = 0; i < hop_count; ++i)
      cfg.hopping.push_back(*hop_min +
                            (*hop_max - *hop_min) * i / double(hop_count - 1));
  }
  cfg.validate();
  return cfg;
}

void ScanConfig::validate() const {
  if (scenario == Scenario::oracle_suite) return;
  if (hopping.empty()) throw ConfigError("scan.hopping is required");
  if (scenario == Scenario::constant_density && !filling)
    throw ConfigError("constant-density scenario requires scan.filling");
  if (scenario == Scenario::single_point && !mu && !filling)
    throw ConfigError("single-point scenario requires scan.mu or scan.filling");
  if (gamma2_mode != "auto" && gamma2_mode != "direct" && gamma2_mode != "factorized")
    throw ConfigError("run.gamma2 must be direct|factorized|auto");
  if (dt <= 0.0 || t_max <= 0.0) throw ConfigError("invalid time grid");
}

double ScanConfig::effective_mu() const {
  if (mu) return *mu;
  if (scenario == Scenario::edge_path) return 0.8;
  if (scenario == Scenario::tip_path) return std::sqrt(2.0) - 1.0;
  throw ConfigError("mu not determined by scenario; set scan.mu");
}

Gamma2Mode ScanConfig::gamma2() const {
  if (gamma2_mode == "direct") return Gamma2Mode::direct;
  if (gamma2_mode == "factorized") return Gamma2Mode::factorized;
  return Gamma2Mode::automatic;
}

std::string ScanConfig::canonical() const {
  std::ostringstream os;
  os << "impurity.g = " << format_double(g) << "\n";
  os << "lattice.dimension = " << dimension << "\n";
  os << "lattice.nmax = " << n_max << "\n";
  os << "lattice.size = " << Ls << "\n";
  os << "run.gamma2 = " << gamma2_mode << "\n";
  os << "run.two_particle = " << (two_particle ? "on" : "off") << "\n";
  os << "scan.hopping =";
  for (std::size_t i = 0; i < hopping.size(); ++i)
    os << (i ? "," : " ") << format_double(hopping[i]);
  os << "\n";
  if (filling) os << "scan.filling = " << format_double(*filling) << "\n";
  if (mu) os << "scan.mu = " << format_double(*mu) << "\n";
  os << "scan.scenario = " << to_string(scenario) << "\n";
  os << "solver.truncation_tol = " << format_double(truncation_tol) << "\n";
  os << "spectral.bin = " << format_double(omega_bin) << "\n";
  os << "time.dt = " << format_double(dt) << "\n";
  os << "time.max = " << format_double(t_max) << "\n";
  return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t ScanConfig::hash() const { return fnv1a(canonical()); }

}  // namespace qgw
