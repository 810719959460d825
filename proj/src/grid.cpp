#include "vortex/grid.hpp"

#include <cstdlib>

namespace vortex {

GridSpec::GridSpec(int modes_per_axis, double dealias_fraction)
    : modes_(modes_per_axis), dealias_fraction_(dealias_fraction) {
  if (modes_ < 4 || modes_ % 2 != 0) {
    throw ConfigError("grid size must be an even integer >= 4, got " +
                      std::to_string(modes_));
  }
  if (!(dealias_fraction_ > 0.0 && dealias_fraction_ <= 1.0)) {
    throw ConfigError("dealias fraction must lie in (0, 1]");
  }
}

bool GridSpec::keeps_mode(int k1, int k2) const {
  const double limit = dealias_fraction_ * modes_ / 2.0;
  return std::abs(k1) <= limit && std::abs(k2) <= limit;
}

}  // namespace vortex
