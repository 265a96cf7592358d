#pragma once

#include <vector>

#include "qgw/density_weights.hpp"

namespace qgw {

/// Uniform time grid t_i = i dt, i = 0..n-1, units of hbar/U.
struct TimeGrid {
  double dt = 0.01;
  int n = 0;
  double t(int i) const { return dt * i; }
  double span() const { return dt * (n - 1); }
  std::vector<double> times() const;
  static TimeGrid over(double t_max, double dt);
};

enum class Gamma2Mode { direct, factorized, automatic };

struct RateOptions {
  Gamma2Mode mode = Gamma2Mode::automatic;
  std::int64_t direct_budget = 2048;  ///< max V * branches for the direct double sum
  int gl_nodes = 5;                   ///< Gauss-Legendre nodes per factorized panel
  bool two_particle = true;           ///< include gamma2 at all
};

/// One-particle dephasing rate (1/V) sum N^2 sin(omega t)/omega per t.
std::vector<double> gamma1(const DensityWeights& w, const TimeGrid& g);

/// Branch-resolved decomposition of gamma1 (outer index = branch).
std::vector<std::vector<double>> gamma1_branches(const DensityWeights& w,
                                                 const TimeGrid& g);

/// Two-particle rate (1/V^2) sum (W^2 + W W') sin((w1+w2)t)/(w1+w2).
/// `direct` enumerates mode pairs; `factorized` integrates the kernel-product
/// form of d(gamma2)/dt panel-by-panel with Gauss-Legendre nodes, which costs
/// O(modes * fock^2) per node instead of O(modes^2) per time.
std::vector<double> gamma2(const DensityWeights& w, const TimeGrid& g,
                           const RateOptions& opt = {});

/// Cumulative trapezoid of gamma on its grid; Gamma(0) = 0.
std::vector<double> decoherence(const TimeGrid& g, const std::vector<double>& gamma);

/// Closed forms with (1 - cos)/omega^2 kernels, for cross-checks.
std::vector<double> decoherence1_closed(const DensityWeights& w, const TimeGrid& g);
std::vector<double> decoherence2_closed_direct(const DensityWeights& w, const TimeGrid& g);
double decoherence_closed_at(const DensityWeights& w, double t);  ///< both terms, direct

struct LambdaParts {
  double one_particle = 0.0;  ///< (1/V) sum N^2
  double two_particle = 0.0;  ///< (1/V^2) sum (W^2 + W W')
  double total() const { return one_particle + two_particle; }
};

/// Short-time Gaussian rate of the echo, L(t->0) = exp(-lambda g^2 t^2).
LambdaParts short_time_lambda(const DensityWeights& w);

/// Full rate bundle: gamma = gamma1 + gamma2, Gamma = cumtrapz(gamma).
struct RateSeries {
  TimeGrid grid;
  std::vector<double> gamma, gamma1, gamma2, Gamma;
  std::vector<std::vector<double>> gamma1_branch;
};

RateSeries compute_rates(const DensityWeights& w, const TimeGrid& g,
                         const RateOptions& opt = {});

}  // namespace qgw
