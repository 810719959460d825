#pragma once

#include <random>
#include <vector>

#include "vortex/spectral_field.hpp"

namespace vortex::test {

inline SpectralField random_field(const GridSpec& grid, std::mt19937_64& gen, bool zero_mean = true) {
  std::normal_distribution<double> normal;
  std::vector<double> v(grid.points());
  for (double& x : v) x = normal(gen);
  return SpectralField::from_values(grid, std::move(v), zero_mean);
}

/// Random trig polynomial with modes |k1|, |k2| <= band.
inline SpectralField random_trig(const GridSpec& grid, int band, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  std::vector<std::array<double, 4>> terms;
  for (int k1 = 0; k1 <= band; ++k1) {
    for (int k2 = -band; k2 <= band; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      terms.push_back({double(k1), double(k2), normal(gen), normal(gen)});
    }
  }
  return SpectralField::from_function(
      grid,
      [&terms](double x1, double x2) {
        double s = 0.0;
        for (const auto& t : terms) {
          const double th = t[0] * x1 + t[1] * x2;
          s += t[2] * std::cos(th) + t[3] * std::sin(th);
        }
        return s;
      },
      true);
}

}  // namespace vortex::test
