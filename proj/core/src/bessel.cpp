#include "qgw/bessel.hpp"

#include <cmath>

namespace qgw {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;
constexpr double kSplit = 15.0;

long double series_j0(long double x) {
  const long double q = 0.25L * x * x;
  long double term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 80; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-24L) break;
  }
  return sum;
}

long double series_j1(long double x) {
  const long double q = 0.25L * x * x;
  long double term = 0.5L * x, sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= -q / (static_cast<long double>(k) * (k + 1));
    sum += term;
    if (std::fabs(term) < 1e-24L) break;
  }
  return sum;
}

/// Hankel asymptotic P, Q sums for order nu (mu = 4 nu^2); valid x >~ 12.
void hankel_pq(long double x, long double mu, long double& P, long double& Q) {
  const long double inv8x = 1.0L / (8.0L * x);
  P = 1.0L;
  Q = 0.0L;
  long double term = 1.0L;
  long double prev = 1e30L;
  for (int k = 1; k < 40; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    term *= (mu - odd * odd) * inv8x / k;
    if (std::fabs(term) >= prev) break;  // asymptotic series turned divergent
    prev = std::fabs(term);
    const int r = k % 4;
    if (r == 1) Q += term;
    else if (r == 2) P -= term;
    else if (r == 3) Q -= term;
    else P += term;
    if (prev < 1e-22L) break;
  }
}

long double hankel_j(long double x, int order) {
  const long double mu = order == 0 ? 0.0L : 4.0L;
  long double P, Q;
  hankel_pq(x, mu, P, Q);
  const long double chi = x - (order == 0 ? 0.25L : 0.75L) * kPi;
  return std::sqrt(2.0L / (kPi * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  const long double ax = std::fabs(static_cast<long double>(x));
  return double(ax <= kSplit ? series_j0(ax) : hankel_j(ax, 0));
}

double bessel_j1(double x) {
  const long double ax = std::fabs(static_cast<long double>(x));
  const long double v = ax <= kSplit ? series_j1(ax) : hankel_j(ax, 1);
  return double(x < 0 ? -v : v);
}

}  // namespace qgw
