#include "qgw/dephasing_rates.hpp"

#include <cmath>
#include <string>

#include "qgw/errors.hpp"

namespace qgw {

std::vector<double> TimeGrid::times() const {
  std::vector<double> ts(n);
  for (int i = 0; i < n; ++i) ts[i] = t(i);
  return ts;
}

TimeGrid TimeGrid::over(double t_max, double dt) {
  TimeGrid g;
  g.dt = dt;
  g.n = int(std::llround(t_max / dt)) + 1;
  return g;
}

std::vector<double> gamma1(const DensityWeights& w, const TimeGrid& g) {
  const std::size_t M = w.n_modes();
  std::vector<double> out(g.n, 0.0);
  const double invV = 1.0 / double(w.volume);
#pragma omp parallel for schedule(static)
  for (int it = 0; it < g.n; ++it) {
    const double t = g.t(it);
    double s = 0.0;
    for (std::size_t i = 0; i < M; ++i)
      s += w.mult[i] * w.N[i] * w.N[i] * std::sin(w.omega[i] * t) / w.omega[i];
    out[it] = s * invV;
  }
  return out;
}

std::vector<std::vector<double>> gamma1_branches(const DensityWeights& w,
                                                 const TimeGrid& g) {
  const std::size_t M = w.n_modes();
  std::vector<std::vector<double>> out(w.branches, std::vector<double>(g.n, 0.0));
  const double invV = 1.0 / double(w.volume);
#pragma omp parallel for schedule(static)
  for (int it = 0; it < g.n; ++it) {
    const double t = g.t(it);
    for (std::size_t i = 0; i < M; ++i)
      out[w.branch[i]][it] +=
          invV * w.mult[i] * w.N[i] * w.N[i] * std::sin(w.omega[i] * t) / w.omega[i];
  }
  return out;
}

namespace {

// 5-point Gauss-Legendre nodes/weights on [0, 1]
constexpr int kGL = 5;
constexpr double kGLx[kGL] = {0.046910077030668004, 0.23076534494715845, 0.5,
                              0.7692346550528415, 0.953089922969332};
constexpr double kGLw[kGL] = {0.11846344252809454, 0.23931433524968324,
                              0.28444444444444444, 0.23931433524968324,
                              0.11846344252809454};

struct PairTable {
  std::vector<double> P;      // mult_i mult_j (W^2 + W W') / V^2
  std::vector<double> Omega;  // omega_i + omega_j
};

PairTable build_pairs(const DensityWeights& w) {
  const std::size_t M = w.n_modes();
  PairTable tbl;
  tbl.P.resize(M * M);
  tbl.Omega.resize(M * M);
  const double invV2 = 1.0 / (double(w.volume) * double(w.volume));
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t j = 0; j < M; ++j) {
      const double Wij = w.W(i, j), Wji = w.W(j, i);
      tbl.P[i * M + j] = invV2 * w.mult[i] * w.mult[j] * (Wij * Wij + Wij * Wji);
      tbl.Omega[i * M + j] = w.omega[i] + w.omega[j];
    }
  }
  return tbl;
}

std::vector<double> gamma2_direct(const DensityWeights& w, const TimeGrid& g) {
  const PairTable tbl = build_pairs(w);
  const std::size_t NP = tbl.P.size();
  std::vector<double> out(g.n, 0.0);
#pragma omp parallel for schedule(static)
  for (int it = 0; it < g.n; ++it) {
    const double t = g.t(it);
    double s = 0.0;
    for (std::size_t p = 0; p < NP; ++p)
      s += tbl.P[p] * std::sin(tbl.Omega[p] * t) / tbl.Omega[p];
    out[it] = s;
  }
  return out;
}

/// Factorized kernels: rows of Wmat are the flattened (n, m) entries of the
/// three mode-local outer products, weighted by mult/V:
///   block 0: du_n du_m, block 1: v_n v_m, block 2: du_n v_m
/// K(t) = Wmat * [cos(omega t); sin(omega t)] gives
///   d(gamma2)/dt = Re sum_nm [K0 K1](nm) + K2(nm) K2(mn).
struct KernelPlan {
  Eigen::MatrixXd Wmat;  // 3 N^2 x modes
  Eigen::VectorXd omega;
  int N = 0;

  explicit KernelPlan(const DensityWeights& w) {
    N = w.fock_states;
    const std::size_t M = w.n_modes();
    Wmat.resize(3 * N * N, M);
    omega.resize(M);
    const double invV = 1.0 / double(w.volume);
    for (std::size_t i = 0; i < M; ++i) {
      omega[i] = w.omega[i];
      const double wt = w.mult[i] * invV;
      for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m) {
          Wmat(n * N + m, i) = wt * w.du(i, n) * w.du(i, m);
          Wmat(N * N + n * N + m, i) = wt * w.v(i, n) * w.v(i, m);
          Wmat(2 * N * N + n * N + m, i) = wt * w.du(i, n) * w.v(i, m);
        }
    }
  }

  /// integrand of gamma2 at the columns (cos|sin) of K
  double integrand(const Eigen::Ref<const Eigen::VectorXd>& kc,
                   const Eigen::Ref<const Eigen::VectorXd>& ks) const {
    const int NN = N * N;
    double s = 0.0;
    for (int n = 0; n < N; ++n)
      for (int m = 0; m < N; ++m) {
        const int nm = n * N + m, mn = m * N + n;
        s += kc[nm] * kc[NN + nm] - ks[nm] * ks[NN + nm];
        s += kc[2 * NN + nm] * kc[2 * NN + mn] - ks[2 * NN + nm] * ks[2 * NN + mn];
      }
    return s;
  }
};

std::vector<double> gamma2_factorized(const DensityWeights& w, const TimeGrid& g) {
  const KernelPlan plan(w);
  const std::size_t M = w.n_modes();
  const int panels = g.n - 1;
  std::vector<double> increments(std::max(panels, 0), 0.0);

  const int batch = 256;  // panels per GEMM
#pragma omp parallel
  {
    Eigen::MatrixXd phases(M, 2 * batch * kGL);
    Eigen::MatrixXd K;
#pragma omp for schedule(dynamic)
    for (int p0 = 0; p0 < panels; p0 += batch) {
      const int nb = std::min(batch, panels - p0);
      const int nodes = nb * kGL;
      for (int b = 0; b < nb; ++b) {
        const double t0 = g.t(p0 + b);
        for (int q = 0; q < kGL; ++q) {
          const double tau = t0 + g.dt * kGLx[q];
          const int col = b * kGL + q;
          for (std::size_t i = 0; i < M; ++i) {
            const double ph = plan.omega[i] * tau;
            phases(i, 2 * col) = std::cos(ph);
            phases(i, 2 * col + 1) = std::sin(ph);
          }
        }
      }
      K.noalias() = plan.Wmat * phases.leftCols(2 * nodes);
      for (int b = 0; b < nb; ++b) {
        double inc = 0.0;
        for (int q = 0; q < kGL; ++q) {
          const int col = b * kGL + q;
          inc += kGLw[q] * plan.integrand(K.col(2 * col), K.col(2 * col + 1));
        }
        increments[p0 + b] = inc * g.dt;
      }
    }
  }

  std::vector<double> out(g.n, 0.0);
  for (int i = 1; i < g.n; ++i) out[i] = out[i - 1] + increments[i - 1];
  return out;
}

}  // namespace

std::vector<double> gamma2(const DensityWeights& w, const TimeGrid& g,
                           const RateOptions& opt) {
  const std::int64_t size = w.volume * w.branches;
  switch (opt.mode) {
    case Gamma2Mode::direct:
      if (size > opt.direct_budget)
        throw ModeUnavailable("direct gamma2 needs V*branches <= " +
                              std::to_string(opt.direct_budget) + ", got " +
                              std::to_string(size));
      return gamma2_direct(w, g);
    case Gamma2Mode::factorized:
      return gamma2_factorized(w, g);
    case Gamma2Mode::automatic:
    default:
      return size <= opt.direct_budget ? gamma2_direct(w, g)
                                       : gamma2_factorized(w, g);
  }
}

std::vector<double> decoherence(const TimeGrid& g, const std::vector<double>& gam) {
  std::vector<double> G(gam.size(), 0.0);
  for (std::size_t i = 1; i < gam.size(); ++i)
    G[i] = G[i - 1] + 0.5 * g.dt * (gam[i - 1] + gam[i]);
  return G;
}

std::vector<double> decoherence1_closed(const DensityWeights& w, const TimeGrid& g) {
  std::vector<double> out(g.n, 0.0);
  const double invV = 1.0 / double(w.volume);
#pragma omp parallel for schedule(static)
  for (int it = 0; it < g.n; ++it) {
    const double t = g.t(it);
    double s = 0.0;
    for (std::size_t i = 0; i < w.n_modes(); ++i) {
      const double om = w.omega[i];
      s += w.mult[i] * w.N[i] * w.N[i] * (1.0 - std::cos(om * t)) / (om * om);
    }
    out[it] = s * invV;
  }
  return out;
}

std::vector<double> decoherence2_closed_direct(const DensityWeights& w,
                                               const TimeGrid& g) {
  const PairTable tbl = build_pairs(w);
  std::vector<double> out(g.n, 0.0);
#pragma omp parallel for schedule(static)
  for (int it = 0; it < g.n; ++it) {
    const double t = g.t(it);
    double s = 0.0;
    for (std::size_t p = 0; p < tbl.P.size(); ++p) {
      const double Om = tbl.Omega[p];
      s += tbl.P[p] * (1.0 - std::cos(Om * t)) / (Om * Om);
    }
    out[it] = s;
  }
  return out;
}

double decoherence_closed_at(const DensityWeights& w, double t) {
  double s = 0.0;
  const double invV = 1.0 / double(w.volume);
  for (std::size_t i = 0; i < w.n_modes(); ++i) {
    const double om = w.omega[i];
    s += invV * w.mult[i] * w.N[i] * w.N[i] * (1.0 - std::cos(om * t)) / (om * om);
  }
  const PairTable tbl = build_pairs(w);
  for (std::size_t p = 0; p < tbl.P.size(); ++p) {
    const double Om = tbl.Omega[p];
    s += tbl.P[p] * (1.0 - std::cos(Om * t)) / (Om * Om);
  }
  return s;
}

LambdaParts short_time_lambda(const DensityWeights& w) {
  LambdaParts out;
  out.one_particle = w.one_particle_moment();
  // two-particle moment from the factorized kernels at t = 0
  const KernelPlan plan(w);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(w.n_modes());
  Eigen::VectorXd zeros = Eigen::VectorXd::Zero(w.n_modes());
  Eigen::VectorXd kc = plan.Wmat * ones;
  Eigen::VectorXd ks = plan.Wmat * zeros;
  out.two_particle = plan.integrand(kc, ks);
  return out;
}

RateSeries compute_rates(const DensityWeights& w, const TimeGrid& g,
                         const RateOptions& opt) {
  RateSeries rs;
  rs.grid = g;
  rs.gamma1 = gamma1(w, g);
  rs.gamma1_branch = gamma1_branches(w, g);
  if (opt.two_particle)
    rs.gamma2 = gamma2(w, g, opt);
  else
    rs.gamma2.assign(g.n, 0.0);
  rs.gamma.resize(g.n);
  for (int i = 0; i < g.n; ++i) rs.gamma[i] = rs.gamma1[i] + rs.gamma2[i];
  rs.Gamma = decoherence(g, rs.gamma);
  return rs;
}

}  // namespace qgw
