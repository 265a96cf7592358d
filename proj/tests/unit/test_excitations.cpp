#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>

#include "hessian_oracle.hpp"
#include "qgw/bogoliubov.hpp"
#include "qgw/errors.hpp"
#include "qgw/fits.hpp"
#include "qgw/kgrid.hpp"
#include "qgw/spectrum.hpp"

using namespace qgw;

namespace {

GutzwillerState state_at(double hop2d, double mu, int nmax, int Ls) {
  BathParams p;
  p.set_scaled_hopping(hop2d);
  p.chemical_potential = mu;
  p.fock_cutoff = nmax;
  p.linear_size = Ls;
  SolverOptions opt;
  opt.truncation_tol = 1.0;
  return solve_ground_state(p, opt);
}

}  // namespace

TEST_CASE("kgrid wedge covers the zone with correct multiplicities") {
  for (int Ls : {4, 6, 8, 64}) {
    const KGrid g = KGrid::make(Ls, 2);
    std::int64_t total = 0;
    for (const auto& w : g.wedge) total += w.multiplicity;
    CHECK(total == std::int64_t(Ls) * Ls);
  }
  const KGrid g1 = KGrid::make(8, 1);
  std::int64_t total = 0;
  for (const auto& w : g1.wedge) total += w.multiplicity;
  CHECK(total == 8);
  // zone corner
  CHECK(KGrid::zk_of({4, 4}, 8, 2) == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(KGrid::zk_of({0, 0}, 8, 2) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("Mott blocks at J = 0: diagonal A with H_n - H_1 gaps, B = 0") {
  const GutzwillerState st = state_at(0.0, 0.4, 5, 8);
  const FluctuationBlock blk = build_fluctuation_block(st, {1, 2});
  CHECK(blk.B.cwiseAbs().maxCoeff() == 0.0);
  const Eigen::VectorXd H = onsite_energies(st.params);
  for (int n = 0; n <= 5; ++n) {
    if (n == 1) continue;  // ground Fock direction is projected out
    CHECK(blk.A(n, n) == doctest::Approx(H[n] - H[1]).epsilon(1e-12));
  }
  // gaps at J = 0 for the n = 1 lobe: hole mu, particle U - mu
  const auto modes = diagonalize_modes(blk);
  CHECK(modes[0].omega == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(modes[1].omega == doctest::Approx(0.6).epsilon(1e-10));
}

TEST_CASE("blocks match the numeric lattice Hessian") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uh(0.02, 1.2), um(0.1, 1.4);
  std::uniform_int_distribution<int> un(3, 6), uk(0, 5);
  for (int trial = 0; trial < 4; ++trial) {
    const GutzwillerState st = state_at(uh(rng), um(rng), un(rng), 6);
    const std::array<int, 2> kidx{uk(rng), uk(rng)};
    if (kidx[0] == 0 && kidx[1] == 0) continue;  // +-k pair must be distinct
    if ((kidx[0] == 0 || kidx[0] == 3) && (kidx[1] == 0 || kidx[1] == 3)) continue;
    const FluctuationBlock blk = build_fluctuation_block(st, kidx);
    const Eigen::MatrixXd Ar = blk.basis.transpose() * blk.A * blk.basis;
    const Eigen::MatrixXd Br = blk.basis.transpose() * blk.B * blk.basis;
    testing::LatticeEnergyOracle oracle(st);
    Eigen::MatrixXd An, Bn;
    oracle.numeric_blocks(kidx, 1e-5, blk.basis, An, Bn);
    CHECK((An - Ar).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((Bn - Br).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("decoupled case: B = 0, diagonal A") {
  // fabricate a block over c0 = e0 with prescribed diagonal
  const int N = 4;
  Eigen::VectorXd c0 = Eigen::VectorXd::Zero(N);
  c0[0] = 1.0;
  FluctuationBlock blk;
  blk.A = Eigen::MatrixXd::Zero(N, N);
  blk.A.diagonal() << 0.0, 0.7, 1.3, 2.9;
  blk.B = Eigen::MatrixXd::Zero(N, N);
  blk.basis = orthogonal_complement(c0);
  const auto modes = diagonalize_modes(blk);
  REQUIRE(modes.size() == 3);
  CHECK(modes[0].omega == doctest::Approx(0.7));
  CHECK(modes[1].omega == doctest::Approx(1.3));
  CHECK(modes[2].omega == doctest::Approx(2.9));
  for (const auto& m : modes) {
    CHECK(m.v.norm() < 1e-12);
    CHECK(m.u.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Bogoliubov normalization, orthogonality, reconstruction") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uh(0.05, 1.0), um(0.1, 1.2);
  std::uniform_int_distribution<int> uk(0, 3);
  for (int trial = 0; trial < 6; ++trial) {
    const GutzwillerState st = state_at(uh(rng), um(rng), 5, 8);
    const std::array<int, 2> kidx{uk(rng) + 1, uk(rng)};
    const FluctuationBlock blk = build_fluctuation_block(st, kidx);
    const auto modes = diagonalize_modes(blk);
    for (std::size_t a = 0; a < modes.size(); ++a) {
      if (modes[a].zero_mode) continue;
      for (std::size_t b = 0; b < modes.size(); ++b) {
        if (modes[b].zero_mode) continue;
        const double ortho = modes[a].u.dot(modes[b].u) - modes[a].v.dot(modes[b].v);
        CHECK(std::abs(ortho - (a == b ? 1.0 : 0.0)) < 1e-10);
      }
    }
    // reconstruct A = sum w (uu' + vv'), B = -sum w (uv' + vu')
    Eigen::MatrixXd Ar = Eigen::MatrixXd::Zero(blk.A.rows(), blk.A.cols());
    Eigen::MatrixXd Br = Ar;
    for (const auto& m : modes) {
      if (m.zero_mode) continue;
      Ar += m.omega * (m.u * m.u.transpose() + m.v * m.v.transpose());
      Br -= m.omega * (m.u * m.v.transpose() + m.v * m.u.transpose());
    }
    CHECK((Ar - blk.A).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((Br - blk.B).cwiseAbs().maxCoeff() < 1e-8);
    // dense solver agrees
    const auto dense = diagonalize_modes_dense(blk);
    REQUIRE(dense.size() == modes.size());
    for (std::size_t a = 0; a < modes.size(); ++a)
      CHECK(std::abs(dense[a].omega - modes[a].omega) < 1e-8);
  }
}

TEST_CASE("SF k = 0 carries exactly one flagged zero mode") {
  const GutzwillerState st = state_at(0.5, 0.7, 6, 8);
  REQUIRE(st.superfluid());
  const FluctuationBlock blk = build_fluctuation_block(st, {0, 0});
  const auto modes = diagonalize_modes(blk);
  int zeros = 0;
  for (const auto& m : modes) zeros += m.zero_mode ? 1 : 0;
  CHECK(zeros == 1);
  CHECK(modes[0].zero_mode);
  CHECK(modes[1].omega > 1e-6);
}

TEST_CASE("Mott phase is gapped at small k") {
  const GutzwillerState st = state_at(0.05, 0.4, 6, 16);
  REQUIRE_FALSE(st.superfluid());
  const ExcitationSpectrum sp = compute_spectrum(st);
  CHECK(sp.min_frequency(0) > 0.05);
  CHECK(sp.min_frequency(1) > 0.05);
}

TEST_CASE("dynamical instability is reported") {
  const int N = 3;
  Eigen::VectorXd c0 = Eigen::VectorXd::Zero(N);
  c0[0] = 1.0;
  FluctuationBlock blk;
  blk.A = Eigen::MatrixXd::Zero(N, N);
  blk.A.diagonal() << 0.0, -0.5, 1.0;  // negative curvature direction
  blk.B = Eigen::MatrixXd::Zero(N, N);
  blk.basis = orthogonal_complement(c0);
  CHECK_THROWS_AS(diagonalize_modes(blk), DynamicallyUnstable);
}

TEST_CASE("wedge expansion is exact: Ls = 4 full grid vs symmetry-reduced") {
  const GutzwillerState st = state_at(0.6, 0.7, 4, 4);
  const ExcitationSpectrum wedge = compute_spectrum(st);
  const ExcitationSpectrum full = compute_spectrum_full(st);
  // multiset of frequencies with multiplicities must match exactly
  std::multimap<double, int> acc;
  std::vector<double> wfreq, ffreq;
  for (std::size_t w = 0; w < wedge.modes.size(); ++w)
    for (const auto& m : wedge.modes[w])
      for (int c = 0; c < wedge.grid.wedge[w].multiplicity; ++c)
        wfreq.push_back(m.omega);
  for (const auto& pm : full.modes)
    for (const auto& m : pm) ffreq.push_back(m.omega);
  REQUIRE(wfreq.size() == ffreq.size());
  std::sort(wfreq.begin(), wfreq.end());
  std::sort(ffreq.begin(), ffreq.end());
  for (std::size_t i = 0; i < wfreq.size(); ++i)
    CHECK(std::abs(wfreq[i] - ffreq[i]) < 1e-12);
}

TEST_CASE("point-group invariance of frequencies on the full grid") {
  const GutzwillerState st = state_at(0.4, 0.6, 4, 8);
  const ExcitationSpectrum full = compute_spectrum_full(st);
  const int Ls = 8;
  auto idx = [&](int mx, int my) {
    return std::size_t(((mx % Ls + Ls) % Ls)) * Ls + ((my % Ls + Ls) % Ls);
  };
  for (int mx = 0; mx < Ls; ++mx)
    for (int my = 0; my < Ls; ++my)
      for (int b = 0; b < 4; ++b) {
        const double w = full.modes[idx(mx, my)][b].omega;
        CHECK(std::abs(full.modes[idx(-mx, -my)][b].omega - w) < 1e-10);
        CHECK(std::abs(full.modes[idx(my, mx)][b].omega - w) < 1e-10);
        CHECK(std::abs(full.modes[idx(-my, mx)][b].omega - w) < 1e-10);
      }
}

TEST_CASE("branch count equals the Fock cutoff everywhere") {
  const GutzwillerState st = state_at(0.7, 0.8, 5, 8);
  const ExcitationSpectrum sp = compute_spectrum(st);
  for (const auto& pm : sp.modes) CHECK(int(pm.size()) == 5);
  CHECK(sp.branches() == 5);
}

TEST_CASE("Goldstone dispersion is linear in the SF phase") {
  const GutzwillerState st = state_at(0.5, 0.7, 6, 64);
  const ExcitationSpectrum sp = compute_spectrum(st);
  // lowest branch along the axis: omega ~ c |k|
  std::vector<double> ks, ws;
  for (std::size_t w = 0; w < sp.grid.wedge.size(); ++w) {
    const auto& m = sp.grid.wedge[w].m;
    if (m[1] != 0 || m[0] < 1 || m[0] > 6) continue;
    ks.push_back(2.0 * std::numbers::pi * m[0] / 64.0);
    ws.push_back(sp.modes[w][0].omega);
  }
  REQUIRE(ks.size() >= 4);
  const auto fit = loglog_fit(ks, ws, 0.0, 10.0);
  CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.08));
}

TEST_CASE("spectrum cache round-trip") {
  const GutzwillerState st = state_at(0.3, 0.5, 4, 8);
  const ExcitationSpectrum sp = compute_spectrum(st);
  const std::string prefix = "/tmp/qgw_test_cache";
  save_spectrum(sp, prefix);
  ExcitationSpectrum loaded;
  REQUIRE(load_spectrum(loaded, st, prefix));
  for (std::size_t w = 0; w < sp.modes.size(); ++w)
    for (std::size_t b = 0; b < sp.modes[w].size(); ++b) {
      CHECK(loaded.modes[w][b].omega == sp.modes[w][b].omega);
      CHECK((loaded.modes[w][b].u - sp.modes[w][b].u).norm() == 0.0);
      CHECK((loaded.modes[w][b].v - sp.modes[w][b].v).norm() == 0.0);
    }
  // stale cache (different params) is rejected
  const GutzwillerState other = state_at(0.31, 0.5, 4, 8);
  ExcitationSpectrum bad;
  CHECK_FALSE(load_spectrum(bad, other, prefix));
  std::filesystem::remove(prefix + ".f64");
  std::filesystem::remove(prefix + ".json");
}
