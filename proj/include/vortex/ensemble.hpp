#pragma once

#include <vector>

#include "vortex/grid.hpp"

namespace vortex {

/// N signed vortices per species; each particle of species +/- carries
/// weight Gamma_+/- / N.  Positions are kept wrapped into [-pi, pi)^2.
struct ParticleEnsemble {
  std::vector<Vec2> plus;
  std::vector<Vec2> minus;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;

  std::size_t count() const { return plus.size(); }
  double weight_plus() const { return plus.empty() ? 0.0 : gamma_plus / plus.size(); }
  double weight_minus() const { return minus.empty() ? 0.0 : gamma_minus / minus.size(); }
};

}  // namespace vortex
