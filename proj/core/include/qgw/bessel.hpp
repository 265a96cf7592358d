#pragma once

namespace qgw {

/// Bessel functions of the first kind, orders 0 and 1.
///
/// Ascending series below |x| = 15 (long-double accumulation), Hankel
/// asymptotic expansion above; absolute accuracy better than 1e-12 on the
/// real line, verified against high-precision reference values.
double bessel_j0(double x);
double bessel_j1(double x);

}  // namespace qgw
