#include "qgw/scan.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "qgw/csv.hpp"
#include "qgw/errors.hpp"
#include "qgw/mott_lobe.hpp"
#include "qgw/open_system.hpp"
#include "qgw/reference_baths.hpp"
#include "qgw/spectral_density.hpp"
#include "qgw/svg_plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace qgw {

namespace {

json record_to_json(const ScanRecord& r) {
  json j;
  j["index"] = r.index;
  j["ok"] = r.ok;
  j["error"] = r.error;
  j["hopping2d"] = r.hopping2d;
  j["mu"] = r.mu;
  if (r.filling_target) j["filling_target"] = *r.filling_target;
  j["psi"] = r.psi;
  j["n0"] = r.n0;
  j["energy"] = r.energy;
  j["truncation_ok"] = r.truncation_ok;
  j["top_weight"] = r.top_weight;
  j["gap0"] = r.gap0;
  j["gap1"] = r.gap1;
  j["goldstone_edge"] = r.goldstone_edge;
  j["tau_g"] = r.tau_g;
  j["lambda1"] = r.lambda1;
  j["lambda2"] = r.lambda2;
  if (r.spectral_exponent) j["spectral_exponent"] = *r.spectral_exponent;
  if (r.eta) j["eta"] = *r.eta;
  j["N_minus"] = r.N_minus;
  j["N_plus"] = r.N_plus;
  j["R"] = r.R;
  j["dir"] = r.dir;
  j["rates_csv"] = r.rates_csv;
  j["echo_csv"] = r.echo_csv;
  j["spectral_csv"] = r.spectral_csv;
  j["report_json"] = r.report_json;
  j["seconds"] = r.seconds;
  j["config_hash"] = r.config_hash;
  j["point_hash"] = r.point_hash;
  return j;
}

ScanRecord record_from_json(const json& j) {
  ScanRecord r;
  r.index = j.value("index", 0);
  r.ok = j.value("ok", false);
  r.error = j.value("error", "");
  r.hopping2d = j.value("hopping2d", 0.0);
  r.mu = j.value("mu", 0.0);
  if (j.contains("filling_target")) r.filling_target = j["filling_target"].get<double>();
  r.psi = j.value("psi", 0.0);
  r.n0 = j.value("n0", 0.0);
  r.energy = j.value("energy", 0.0);
  r.truncation_ok = j.value("truncation_ok", true);
  r.top_weight = j.value("top_weight", 0.0);
  r.gap0 = j.value("gap0", 0.0);
  r.gap1 = j.value("gap1", 0.0);
  r.goldstone_edge = j.value("goldstone_edge", 0.0);
  r.tau_g = j.value("tau_g", 0.0);
  r.lambda1 = j.value("lambda1", 0.0);
  r.lambda2 = j.value("lambda2", 0.0);
  if (j.contains("spectral_exponent")) r.spectral_exponent = j["spectral_exponent"].get<double>();
  if (j.contains("eta")) r.eta = j["eta"].get<double>();
  r.N_minus = j.value("N_minus", 0.0);
  r.N_plus = j.value("N_plus", 0.0);
  r.R = j.value("R", 0.0);
  r.dir = j.value("dir", "");
  r.rates_csv = j.value("rates_csv", "");
  r.echo_csv = j.value("echo_csv", "");
  r.spectral_csv = j.value("spectral_csv", "");
  r.report_json = j.value("report_json", "");
  r.seconds = j.value("seconds", 0.0);
  r.config_hash = j.value("config_hash", std::uint64_t(0));
  r.point_hash = j.value("point_hash", std::uint64_t(0));
  return r;
}

std::uint64_t point_hash_of(const ScanConfig& cfg, int index, double hop, double mu) {
  return fnv1a(std::to_string(cfg.hash()) + "|" + std::to_string(index) + "|" +
               format_double(hop) + "|" + format_double(mu));
}

/// The per-point pipeline.
ScanRecord run_point(const ScanConfig& cfg, int index, const std::string& dir) {
  const auto t_start = std::chrono::steady_clock::now();
  ScanRecord rec;
  rec.index = index;
  rec.hopping2d = cfg.hopping[index];
  rec.config_hash = cfg.hash();
  rec.dir = dir;

  BathParams p;
  p.dimension = cfg.dimension;
  p.linear_size = cfg.Ls;
  p.fock_cutoff = cfg.n_max;
  p.impurity_coupling = cfg.g;
  p.set_scaled_hopping(rec.hopping2d);

  SolverOptions sopt;
  sopt.truncation_tol = cfg.truncation_tol;

  if (cfg.scenario == Scenario::constant_density ||
      (cfg.scenario == Scenario::single_point && cfg.filling && !cfg.mu)) {
    rec.filling_target = *cfg.filling;
    MuForDensityOptions mopt;
    mopt.solver = sopt;
    rec.mu = find_mu_for_density(p, *cfg.filling, mopt).mu;
  } else {
    rec.mu = cfg.effective_mu();
  }
  p.chemical_potential = rec.mu;
  rec.point_hash = point_hash_of(cfg, index, rec.hopping2d, rec.mu);

  const GutzwillerState st = solve_ground_state(p, sopt);
  rec.psi = st.order_parameter;
  rec.n0 = st.density;
  rec.energy = st.energy_per_site;
  rec.truncation_ok = st.truncation_ok;
  rec.top_weight = st.top_weight;

  const ExcitationSpectrum sp = compute_spectrum(st);
  rec.gap0 = sp.min_frequency(0);
  rec.gap1 = sp.min_frequency(1);
  rec.goldstone_edge = sp.goldstone_band_edge();
  rec.tau_g = sp.tau_g();

  const DensityWeights w = compute_weights(sp);

  const SpectralDensity J = spectral_density(w, cfg.omega_bin);
  try {
    rec.spectral_exponent = fit_low_frequency(J).fit.exponent;
  } catch (const NonPositive&) {
    // Mott phase: J vanishes identically; nothing to fit
  }

  const TimeGrid grid = cfg.time_grid();
  RateOptions ropt;
  ropt.mode = cfg.gamma2();
  ropt.two_particle = cfg.two_particle;
  const RateSeries rates = compute_rates(w, grid, ropt);

  const LambdaParts lam = short_time_lambda(w);
  rec.lambda1 = lam.one_particle;
  rec.lambda2 = lam.two_particle;

  const std::vector<double> echo = loschmidt_echo(rates.Gamma, cfg.g);
  const MarkovianityReport blp = blp_measures(grid, rates.gamma, echo, cfg.g);
  rec.N_minus = blp.N_minus;
  rec.N_plus = blp.N_plus;
  rec.R = blp.R;

  // Markov plateau: last quarter of the window, 5% stability, non-negative rate
  {
    const std::vector<double> ts = grid.times();
    const double T = grid.span();
    const PlateauCheck pc = plateau_check(ts, rates.gamma, 0.75 * T, T, 0.05);
    double min_late = 0.0;
    for (int i = 0; i < grid.n; ++i)
      if (ts[i] >= 0.25 * T) min_late = std::min(min_late, rates.gamma[i]);
    if (pc.stable && pc.value > 0.0 && min_late >= -1e-12) rec.eta = pc.value;
  }

  // persist series
  rec.rates_csv = dir + "/rates.csv";
  rec.echo_csv = dir + "/echo.csv";
  rec.spectral_csv = dir + "/spectral.csv";
  rec.report_json = dir + "/report.json";
  {
    const std::vector<std::string> names = {"t", "gamma", "gamma1", "gamma2", "Gamma"};
    const std::vector<std::vector<double>> cols = {grid.times(), rates.gamma,
                                                   rates.gamma1, rates.gamma2,
                                                   rates.Gamma};
    write_series_csv(rec.rates_csv, names, cols);
  }
  {
    std::vector<double> sqrtL(echo.size());
    for (std::size_t i = 0; i < echo.size(); ++i) sqrtL[i] = std::sqrt(echo[i]);
    const std::vector<std::string> names = {"t", "L", "sqrtL"};
    const std::vector<std::vector<double>> cols = {grid.times(), echo, sqrtL};
    write_series_csv(rec.echo_csv, names, cols);
  }
  {
    std::vector<double> centers(J.bins());
    for (std::size_t b = 0; b < J.bins(); ++b) centers[b] = J.center(b);
    const std::vector<std::string> names = {"omega", "J"};
    const std::vector<std::vector<double>> cols = {centers, J.values};
    write_series_csv(rec.spectral_csv, names, cols);
  }

  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t_start).count();
  rec.ok = true;

  json rep = record_to_json(rec);
  rep["negative_intervals"] = blp.negative_intervals;
  rep["branches"] = sp.branches();
  rep["canonical_config"] = cfg.canonical();
  std::ofstream(rec.report_json) << rep.dump(2) << "\n";
  return rec;
}

}  // namespace

std::string resolve_output_dir(const ScanConfig& cfg) {
  if (const char* root = std::getenv("QGW_OUTPUT_ROOT"))
    return std::string(root) + "/" + cfg.output_dir;
  return cfg.output_dir;
}

ScanResult run_scan(const ScanConfig& cfg) {
  cfg.validate();
  if (cfg.scenario == Scenario::oracle_suite) return run_oracle_suite(cfg);

  ScanResult result;
  result.output_dir = resolve_output_dir(cfg);
  fs::create_directories(result.output_dir);
  const int n = int(cfg.hopping.size());
  result.records.resize(n);

#ifdef _OPENMP
  if (cfg.parallelism > 0) omp_set_num_threads(cfg.parallelism);
#endif

  std::vector<std::string> dirs(n);
  for (int i = 0; i < n; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "point_%03d", i);
    dirs[i] = result.output_dir + "/" + name;
    fs::create_directories(dirs[i]);
  }

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    // resume: reuse a completed point with a matching hash
    const std::string rj = dirs[i] + "/report.json";
    if (cfg.resume && fs::exists(rj)) {
      try {
        json j;
        std::ifstream(rj) >> j;
        ScanRecord old = record_from_json(j);
        if (old.ok && old.config_hash == cfg.hash() &&
            fs::exists(old.rates_csv) && fs::exists(old.echo_csv)) {
          old.resumed = true;
          result.records[i] = old;
          continue;
        }
      } catch (...) {
        // unreadable report: recompute
      }
    }
    try {
      result.records[i] = run_point(cfg, i, dirs[i]);
    } catch (const std::exception& e) {
      ScanRecord rec;
      rec.index = i;
      rec.ok = false;
      rec.error = e.what();
      rec.hopping2d = cfg.hopping[i];
      rec.dir = dirs[i];
      rec.config_hash = cfg.hash();
      result.records[i] = rec;
    }
  }

  for (const auto& r : result.records)
    if (!r.ok) ++result.failures;
  write_scan_index(result, cfg);
  return result;
}

void write_scan_index(const ScanResult& result, const ScanConfig& cfg) {
  json idx;
  idx["config_hash"] = cfg.hash();
  idx["canonical_config"] = cfg.canonical();
  idx["failures"] = result.failures;
  idx["records"] = json::array();
  for (const auto& r : result.records) idx["records"].push_back(record_to_json(r));
  const std::string path = result.output_dir + "/scan_index.json";
  std::ofstream(path) << idx.dump(2) << "\n";
  const_cast<ScanResult&>(result).index_file = path;
}

std::vector<ScanRecord> load_scan_index(const std::string& index_file) {
  std::ifstream f(index_file);
  if (!f) throw MissingSeries("cannot open " + index_file);
  json idx;
  f >> idx;
  std::vector<ScanRecord> out;
  for (const auto& j : idx["records"]) out.push_back(record_from_json(j));
  return out;
}

ScanResult run_oracle_suite(const ScanConfig& cfg) {
  ScanResult result;
  result.output_dir = resolve_output_dir(cfg);
  fs::create_directories(result.output_dir);
  const TimeGrid g = cfg.time_grid();
  const std::vector<double> ts = g.times();
  json rep;

  {  // 1D free lattice: Bessel closed form vs momentum sum
    OracleBath b{BathKind::free_lattice, 1};
    const auto closed = oracle_gamma(b, g);
    const auto summed = oracle_gamma_momentum_sum(b, g, 2048);
    double dev = 0.0, scale = 0.0;
    for (int i = 0; i < g.n; ++i) {
      dev = std::max(dev, std::abs(closed[i] - summed[i]));
      scale = std::max(scale, std::abs(closed[i]));
    }
    const std::vector<std::string> names = {"t", "gamma_closed", "gamma_sum"};
    const std::vector<std::vector<double>> cols = {ts, closed, summed};
    write_series_csv(result.output_dir + "/free_lattice_1d.csv", names, cols);
    rep["free_lattice_1d"]["max_rel_dev"] = dev / scale;
  }

  for (int d : {1, 2, 3}) {  // free continuum exponents
    OracleBath b{BathKind::free_continuum, d};
    const auto gam = oracle_gamma(b, g);
    const auto G = decoherence(g, gam);
    const auto fg = asymptotic_exponent(ts, gam, 0.2 * g.span(), 0.9 * g.span());
    const auto fG = asymptotic_exponent(ts, G, 0.2 * g.span(), 0.9 * g.span());
    const std::string key = "free_continuum_" + std::to_string(d) + "d";
    rep[key]["gamma_exponent"] = fg.exponent;
    rep[key]["Gamma_exponent"] = fG.exponent;
    const std::vector<std::string> names = {"t", "gamma", "Gamma"};
    const std::vector<std::vector<double>> cols = {ts, gam, G};
    write_series_csv(result.output_dir + "/" + key + ".csv", names, cols);
  }

  for (int d : {1, 2}) {  // weakly interacting exponents
    OracleBath b{BathKind::weakly_interacting_continuum, d};
    const auto gam = oracle_gamma(b, g);
    const auto fg = asymptotic_exponent(ts, gam, 0.2 * g.span(), 0.9 * g.span());
    const std::string key = "weakly_interacting_" + std::to_string(d) + "d";
    rep[key]["gamma_exponent"] = fg.exponent;
    const std::vector<std::string> names = {"t", "gamma"};
    const std::vector<std::vector<double>> cols = {ts, gam};
    write_series_csv(result.output_dir + "/" + key + ".csv", names, cols);
  }

  {  // 1D weakly interacting lattice: spectral density and van Hove location
    OracleBath b{BathKind::weakly_interacting_lattice, 1};
    std::vector<double> om(2000);
    const double wvh = van_hove_frequency(b);
    for (std::size_t i = 0; i < om.size(); ++i)
      om[i] = 1.2 * wvh * double(i + 1) / double(om.size());
    const auto J = oracle_spectral_density(b, om);
    const std::vector<std::string> names = {"omega", "J"};
    const std::vector<std::vector<double>> cols = {om, J};
    write_series_csv(result.output_dir + "/wi_lattice_1d_spectral.csv", names, cols);
    rep["wi_lattice_1d"]["van_hove_omega"] = wvh;
  }

  std::ofstream(result.output_dir + "/oracle_report.json") << rep.dump(2) << "\n";
  result.index_file = result.output_dir + "/oracle_report.json";
  return result;
}

std::vector<std::string> emit_plots(const std::vector<ScanRecord>& records,
                                    const std::string& out_dir) {
  std::vector<std::string> written;
  std::vector<const ScanRecord*> ok;
  for (const auto& r : records)
    if (r.ok) ok.push_back(&r);
  if (ok.empty()) return written;
  fs::create_directories(out_dir);

  // critical-hopping markers where the lobe formula applies
  auto add_crit = [&](SvgPlot& plot) {
    const double mu = ok.front()->mu;
    if (mu > 0.0 && mu < 1.0)
      plot.add_vertical_marker(mott_boundary_analytic(mu, 1), "critical", "gray");
  };

  {  // gamma(t) overlay, up to 6 curves, tau_G marker from the first record
    SvgPlot plot("dephasing rate", "t [hbar/U]", "gamma(t)");
    const char* colors[6] = {"black", "crimson", "royalblue", "seagreen",
                             "darkorange", "purple"};
    const std::size_t step = std::max<std::size_t>(1, ok.size() / 6);
    int ci = 0;
    for (std::size_t i = 0; i < ok.size() && ci < 6; i += step, ++ci) {
      if (!fs::exists(ok[i]->rates_csv))
        throw MissingSeries(ok[i]->rates_csv + " missing");
      const CsvTable t = read_csv(ok[i]->rates_csv);
      char lbl[48];
      std::snprintf(lbl, sizeof lbl, "2dJ/U = %.4g", ok[i]->hopping2d);
      plot.add_line(t.columns[0], t.columns[1], lbl, colors[ci]);
    }
    if (ok.front()->tau_g > 0.0 && std::isfinite(ok.front()->tau_g))
      plot.add_vertical_marker(ok.front()->tau_g, "tau_G", "gray");
    const std::string path = out_dir + "/gamma_vs_t.svg";
    plot.write(path);
    written.push_back(path);
  }

  {  // spectral density of the first point, log-log, with fitted power overlay
    const ScanRecord& r = *ok.front();
    if (!fs::exists(r.spectral_csv)) throw MissingSeries(r.spectral_csv + " missing");
    const CsvTable t = read_csv(r.spectral_csv);
    SvgPlot plot("one-particle spectral density", "omega [U]", "J(omega)");
    plot.set_log_x(true);
    plot.set_log_y(true);
    plot.add_line(t.columns[0], t.columns[1], "J(omega)", "crimson");
    if (r.spectral_exponent) {
      std::vector<double> xs, ys;
      for (double x : t.columns[0])
        if (x > 0) {
          xs.push_back(x);
          ys.push_back(std::pow(x / t.columns[0][2], *r.spectral_exponent) *
                       (t.columns[1][2] > 0 ? t.columns[1][2] : 1.0));
        }
      char lbl[48];
      std::snprintf(lbl, sizeof lbl, "fit: omega^%.2f", *r.spectral_exponent);
      plot.add_line(xs, ys, lbl, "black", true);
    }
    const std::string path = out_dir + "/spectral_density.svg";
    plot.write(path);
    written.push_back(path);
  }

  if (ok.size() >= 2) {  // lambda and R versus hopping
    std::vector<double> hop, lam, R;
    for (const auto* r : ok) {
      hop.push_back(r->hopping2d);
      lam.push_back(r->lambda1 + r->lambda2);
      R.push_back(r->R);
    }
    SvgPlot pl("short-time rate", "2dJ/U", "lambda");
    pl.set_log_y(true);
    pl.add_line(hop, lam, "lambda", "royalblue");
    add_crit(pl);
    const std::string p1 = out_dir + "/lambda_vs_hopping.svg";
    pl.write(p1);
    written.push_back(p1);

    SvgPlot pr("normalized information back-flow", "2dJ/U", "R = N-/N+");
    pr.add_line(hop, R, "R", "seagreen");
    add_crit(pr);
    const std::string p2 = out_dir + "/R_vs_hopping.svg";
    pr.write(p2);
    written.push_back(p2);
  }
  return written;
}

}  // namespace qgw
