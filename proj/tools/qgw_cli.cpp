// Command line driver: scan batches, single points, reference-bath oracles
// and figure emission for the Bose-Hubbard impurity-dephasing pipeline.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgw/csv.hpp"
#include "qgw/errors.hpp"
#include "qgw/reference_baths.hpp"
#include "qgw/scan.hpp"

namespace {

int run_scan_cmd(const std::string& config_path, const std::string& out_override,
                 bool no_resume) {
  qgw::ScanConfig cfg = qgw::ScanConfig::parse_file(config_path);
  if (!out_override.empty()) cfg.output_dir = out_override;
  if (no_resume) cfg.resume = false;
  const qgw::ScanResult res = qgw::run_scan(cfg);
  for (const auto& r : res.records) {
    if (r.ok)
      std::printf("point %3d  2dJ/U=%-10.6g mu=%-10.6g psi=%-10.4g lambda=%-10.4g "
                  "R=%-8.4g%s%s\n",
                  r.index, r.hopping2d, r.mu, r.psi, r.lambda1 + r.lambda2, r.R,
                  r.resumed ? "  [resumed]" : "",
                  r.truncation_ok ? "" : "  [under-truncated]");
    else
      std::printf("point %3d  2dJ/U=%-10.6g FAILED: %s\n", r.index, r.hopping2d,
                  r.error.c_str());
  }
  std::printf("%zu points, %d failures -> %s\n", res.records.size(), res.failures,
              res.output_dir.c_str());
  if (cfg.scenario != qgw::Scenario::oracle_suite && res.failures == 0)
    qgw::emit_plots(res.records, res.output_dir + "/figures");
  return res.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum Gutzwiller impurity dephasing in a Bose-Hubbard bath"};
  app.require_subcommand(1);

  // --- scan
  auto* scan = app.add_subcommand("scan", "run a declarative scan config");
  std::string config_path, out_override;
  bool no_resume = false;
  scan->add_option("--config", config_path, "key = value scan description")
      ->required()->check(CLI::ExistingFile);
  scan->add_option("--out", out_override, "override output.dir");
  scan->add_flag("--no-resume", no_resume, "recompute completed points");

  // --- point
  auto* point = app.add_subcommand("point", "single parameter point");
  double hop2d = 1.0, mu = 0.8, g = 0.001, tmax = 200.0, dt = 0.01, wbin = 0.005;
  double filling = -1.0, trunc_tol = 1e-10;
  int Ls = 64, nmax = 6;
  std::string g2mode = "auto", out_dir = "out";
  bool no_two_particle = false;
  point->add_option("--hopping", hop2d, "2dJ/U")->required();
  point->add_option("--mu", mu, "mu/U");
  point->add_option("--filling", filling, "target filling (overrides --mu)");
  point->add_option("--Ls", Ls, "linear lattice size");
  point->add_option("--nmax", nmax, "Fock cutoff");
  point->add_option("--g", g, "impurity coupling g/U");
  point->add_option("--tmax", tmax, "time window, hbar/U");
  point->add_option("--dt", dt, "time step");
  point->add_option("--bin", wbin, "spectral bin width");
  point->add_option("--gamma2", g2mode, "direct|factorized|auto");
  point->add_flag("--one-particle-only", no_two_particle, "skip gamma2");
  point->add_option("--truncation-tol", trunc_tol, "top Fock weight tolerance");
  point->add_option("--out", out_dir, "output directory");

  // --- oracle
  auto* oracle = app.add_subcommand("oracle", "reference-bath closed forms");
  std::string kind = "free-lattice";
  int odim = 1, nk = 2048;
  double oJ = 1.0, orho = 1.0, oU = 1.0, otmax = 50.0, odt = 0.01;
  std::string oout = "out/oracle";
  bool suite = false;
  oracle->add_option("--kind", kind,
                     "free-lattice|free-continuum|wi-continuum|wi-lattice");
  oracle->add_option("--dim", odim, "dimension");
  oracle->add_option("--J", oJ, "hopping (lattice kinds)");
  oracle->add_option("--rho0", orho, "condensate density");
  oracle->add_option("--U", oU, "interaction");
  oracle->add_option("--tmax", otmax, "time window");
  oracle->add_option("--dt", odt, "time step");
  oracle->add_option("--nk", nk, "momentum points for the direct sum");
  oracle->add_option("--out", oout, "output directory");
  oracle->add_flag("--suite", suite, "run the full reference table");

  // --- plot
  auto* plot = app.add_subcommand("plot", "figures from a scan index");
  std::string index_file, plot_out = "figures";
  plot->add_option("--index", index_file, "scan_index.json")
      ->required()->check(CLI::ExistingFile);
  plot->add_option("--out", plot_out, "figure directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*scan) return run_scan_cmd(config_path, out_override, no_resume);

    if (*point) {
      qgw::ScanConfig cfg;
      cfg.scenario = qgw::Scenario::single_point;
      cfg.hopping = {hop2d};
      if (filling >= 0.0) cfg.filling = filling;
      else cfg.mu = mu;
      cfg.Ls = Ls;
      cfg.n_max = nmax;
      cfg.g = g;
      cfg.t_max = tmax;
      cfg.dt = dt;
      cfg.omega_bin = wbin;
      cfg.gamma2_mode = g2mode;
      cfg.two_particle = !no_two_particle;
      cfg.truncation_tol = trunc_tol;
      cfg.output_dir = out_dir;
      const qgw::ScanResult res = qgw::run_scan(cfg);
      if (res.failures) {
        std::fprintf(stderr, "failed: %s\n", res.records[0].error.c_str());
        return 1;
      }
      const auto& r = res.records[0];
      std::printf("psi=%.8g n0=%.8g lambda=%.8g (1p %.3g, 2p %.3g) R=%.6g\n",
                  r.psi, r.n0, r.lambda1 + r.lambda2, r.lambda1, r.lambda2, r.R);
      if (r.eta) std::printf("Markov plateau eta=%.8g\n", *r.eta);
      std::printf("series in %s\n", r.dir.c_str());
      return 0;
    }

    if (*oracle) {
      qgw::ScanConfig cfg;
      cfg.scenario = qgw::Scenario::oracle_suite;
      cfg.t_max = otmax;
      cfg.dt = odt;
      cfg.output_dir = oout;
      if (suite) {
        const qgw::ScanResult res = qgw::run_oracle_suite(cfg);
        std::printf("oracle suite -> %s\n", res.index_file.c_str());
        return 0;
      }
      qgw::OracleBath bath;
      if (kind == "free-lattice") bath.kind = qgw::BathKind::free_lattice;
      else if (kind == "free-continuum") bath.kind = qgw::BathKind::free_continuum;
      else if (kind == "wi-continuum")
        bath.kind = qgw::BathKind::weakly_interacting_continuum;
      else if (kind == "wi-lattice")
        bath.kind = qgw::BathKind::weakly_interacting_lattice;
      else throw qgw::Unsupported("unknown kind " + kind);
      bath.dimension = odim;
      bath.hopping = oJ;
      bath.rho0 = orho;
      bath.interaction = oU;
      const qgw::TimeGrid grid = cfg.time_grid();
      const auto gam = qgw::oracle_gamma(bath, grid);
      std::filesystem::create_directories(oout);
      std::vector<std::string> names = {"t", "gamma"};
      std::vector<std::vector<double>> cols = {grid.times(), gam};
      const bool lattice = bath.kind == qgw::BathKind::free_lattice ||
                           bath.kind == qgw::BathKind::weakly_interacting_lattice;
      if (lattice) {
        names.push_back("gamma_sum");
        cols.push_back(qgw::oracle_gamma_momentum_sum(bath, grid, nk));
      }
      qgw::write_series_csv(oout + "/oracle_gamma.csv", names, cols);
      std::printf("wrote %s/oracle_gamma.csv\n", oout.c_str());
      return 0;
    }

    if (*plot) {
      const auto records = qgw::load_scan_index(index_file);
      const auto files = qgw::emit_plots(records, plot_out);
      if (files.empty()) {
        std::printf("no completed records; nothing to plot\n");
        return 0;
      }
      for (const auto& f : files) std::printf("wrote %s\n", f.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
