#include "qgw/bath_params.hpp"

#include <string>

#include "qgw/errors.hpp"

namespace qgw {

std::int64_t BathParams::volume() const {
  std::int64_t v = 1;
  for (int i = 0; i < dimension; ++i) v *= linear_size;
  return v;
}

void BathParams::validate() const {
  if (hopping < 0.0) throw InvalidParams("hopping J must be >= 0");
  if (interaction <= 0.0) throw InvalidParams("interaction U must be > 0");
  if (fock_cutoff < 2) throw InvalidParams("fock_cutoff n_max must be >= 2");
  if (dimension != 1 && dimension != 2)
    throw InvalidParams("dimension must be 1 or 2");
  if (linear_size < 4 || linear_size % 2 != 0)
    throw InvalidParams("linear_size Ls must be even and >= 4, got " +
                        std::to_string(linear_size));
}

}  // namespace qgw
