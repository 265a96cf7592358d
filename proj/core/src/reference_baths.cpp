#include "qgw/reference_baths.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qgw/bessel.hpp"
#include "qgw/errors.hpp"

namespace qgw {

void OracleBath::validate() const {
  const bool latt = kind == BathKind::free_lattice ||
                    kind == BathKind::weakly_interacting_lattice;
  const bool wi = kind == BathKind::weakly_interacting_continuum ||
                  kind == BathKind::weakly_interacting_lattice;
  if (latt && hopping <= 0.0) throw InvalidParams("lattice bath needs J > 0");
  if (!latt && mass <= 0.0) throw InvalidParams("continuum bath needs m > 0");
  if (wi && (rho0 <= 0.0 || interaction <= 0.0))
    throw InvalidParams("weakly interacting bath needs rho0 > 0, U > 0");
  if (dimension < 1 || dimension > 3)
    throw Unsupported("dimension " + std::to_string(dimension));
  if (kind == BathKind::free_continuum && dimension >= 4)
    throw Unsupported("free continuum requires 0 < d < 4");
  if (wi && latt && dimension > 2)
    throw Unsupported("weakly interacting lattice sums only for d <= 2");
}

std::vector<double> oracle_gamma(const OracleBath& bath, const TimeGrid& g) {
  bath.validate();
  std::vector<double> out(g.n, 0.0);
  switch (bath.kind) {
    case BathKind::free_lattice:
      if (bath.dimension == 1) {
        const double J = bath.hopping;
        for (int i = 0; i < g.n; ++i) {
          const double t = g.t(i), x = 2.0 * J * t;
          out[i] = t * (std::sin(x) * bessel_j1(x) + std::cos(x) * bessel_j0(x));
        }
      } else {
        // coarse-grained power law; the momentum sum carries the oscillations
        for (int i = 1; i < g.n; ++i)
          out[i] = std::pow(g.t(i), 0.5 * (2.0 - bath.dimension));
      }
      break;
    case BathKind::free_continuum:
      for (int i = 1; i < g.n; ++i)
        out[i] = std::pow(g.t(i), 0.5 * (2.0 - bath.dimension));
      break;
    case BathKind::weakly_interacting_continuum:
    case BathKind::weakly_interacting_lattice:
      for (int i = 1; i < g.n; ++i)
        out[i] = std::pow(g.t(i), -double(bath.dimension));
      break;
  }
  return out;
}

namespace {

double lattice_eps(double J, const double* k, int d) {
  double e = 0.0;
  for (int i = 0; i < d; ++i) e += 2.0 * J * (1.0 - std::cos(k[i]));
  return e;
}

}  // namespace

std::vector<double> oracle_gamma_momentum_sum(const OracleBath& bath,
                                              const TimeGrid& g, int nk) {
  bath.validate();
  if (bath.kind != BathKind::free_lattice &&
      bath.kind != BathKind::weakly_interacting_lattice)
    throw Unsupported("momentum sum is defined for lattice kinds only");
  const bool wi = bath.kind == BathKind::weakly_interacting_lattice;
  const int d = bath.dimension;
  const double J = bath.hopping, gU = bath.rho0 * bath.interaction;

  // collect (N^2, omega) once; k = 2 pi m / nk over the full zone
  std::vector<double> w2, om;
  const std::int64_t total = d == 1 ? nk : std::int64_t(nk) * nk;
  w2.reserve(total);
  om.reserve(total);
  const double dk = 2.0 * std::numbers::pi / nk;
  int zero_modes = 0;
  for (std::int64_t idx = 0; idx < total; ++idx) {
    double k[2] = {dk * double(idx % nk), d == 2 ? dk * double(idx / nk) : 0.0};
    const double eps = lattice_eps(J, k, d);
    if (eps <= 0.0) {
      // free bosons: N^2 sin(eps t)/eps -> t at k = 0; Bogoliubov weight -> 0
      if (!wi) ++zero_modes;
      continue;
    }
    if (wi) {
      const double omega = std::sqrt(eps * (eps + 2.0 * gU));
      w2.push_back(bath.rho0 * eps / omega);
      om.push_back(omega);
    } else {
      w2.push_back(1.0);
      om.push_back(eps);
    }
  }

  std::vector<double> out(g.n, 0.0);
  const double invV = 1.0 / double(total);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < g.n; ++i) {
    const double t = g.t(i);
    double s = zero_modes * t;
    for (std::size_t q = 0; q < om.size(); ++q)
      s += w2[q] * std::sin(om[q] * t) / om[q];
    out[i] = invV * s;
  }
  return out;
}

std::vector<double> oracle_spectral_density(const OracleBath& bath,
                                            const std::vector<double>& omega) {
  bath.validate();
  std::vector<double> out(omega.size(), 0.0);
  const double d = bath.dimension;
  const double gU = bath.rho0 * bath.interaction;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const double w = omega[i];
    if (w <= 0.0) continue;
    switch (bath.kind) {
      case BathKind::free_continuum:
        out[i] = std::pow(w, 0.5 * (d - 2.0));
        break;
      case BathKind::free_lattice: {
        if (bath.dimension != 1)
          throw Unsupported("closed-form lattice J(omega) is 1D only");
        const double J = bath.hopping;
        const double x = (w / J) * (1.0 - w / (4.0 * J));
        out[i] = x > 0.0 ? 1.0 / std::sqrt(x) : 0.0;
        break;
      }
      case BathKind::weakly_interacting_continuum: {
        const double r = std::sqrt(gU * gU + w * w);
        out[i] = std::pow(r - gU, 0.5 * d) / (2.0 * r);
        break;
      }
      case BathKind::weakly_interacting_lattice: {
        const double r = std::sqrt(gU * gU + w * w);
        if (bath.dimension == 1) {
          const double J = bath.hopping;
          const double band = 1.0 - (r - gU) / (4.0 * J);
          if (band <= 0.0) { out[i] = 0.0; break; }
          out[i] = std::sqrt(1.0 / J) * bath.rho0 *
                   std::sqrt((r - gU) / (r * r)) / std::sqrt(band);
        } else {
          out[i] = std::pow(r - gU, 0.5 * d) / r;  // omega << J regime
        }
        break;
      }
    }
  }
  return out;
}

double van_hove_frequency(const OracleBath& bath) {
  if (bath.kind != BathKind::weakly_interacting_lattice || bath.dimension != 1)
    throw Unsupported("van Hove frequency: 1D weakly interacting lattice only");
  const double J = bath.hopping;
  return std::sqrt(2.0 * J * (2.0 * J + 2.0 * bath.rho0 * bath.interaction));
}

PowerLawFit asymptotic_exponent(std::span<const double> t,
                                std::span<const double> y, double t_lo,
                                double t_hi) {
  // sign check first: mixed signs inside the window are the caller's problem
  bool pos = false, neg = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (y[i] > 0.0) pos = true;
    if (y[i] < 0.0) neg = true;
  }
  if (pos && neg)
    throw NonPositive("series changes sign in the fit window");
  if (neg) {
    std::vector<double> flipped(y.begin(), y.end());
    for (double& v : flipped) v = -v;
    PowerLawFit fit = loglog_fit(t, flipped, t_lo, t_hi);
    fit.prefactor = -fit.prefactor;
    return fit;
  }
  return loglog_fit(t, y, t_lo, t_hi);
}

}  // namespace qgw
