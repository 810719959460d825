#pragma once

#include <array>
#include <memory>
#include <vector>

#include "vortex/mollifier.hpp"
#include "vortex/spectral_field.hpp"

namespace vortex {

/// Fourier multiplier of u = K * omega: i (k2, -k1) / |k|^2, zero at k = 0.
/// This is the sign for which curl u = omega and div u = 0.
std::array<Complex, 2> velocity_multiplier(int k1, int k2);

/// u = K * omega.  Throws ConfigError when omega has a non-negligible mean.
VectorField velocity_from_vorticity(const SpectralField& omega);

/// Same transform without the zero-mean check; the k = 0 mode is ignored.
VectorField velocity_from_vorticity_unchecked(const SpectralField& omega);

/// Fejer-smoothed partial sum of the periodic Green function
/// G(x) = (2 pi)^-2 sum_{k != 0} e^{i k.x} / |k|^2 over max(|k1|,|k2|) <= cutoff.
/// Test-only: the solver path never sums this series.
double green_function_eval(const Vec2& x, int cutoff);

/// The mollified interaction kernel T = V^N * K tabulated on a grid.
class KernelTable {
 public:
  const GridSpec& grid() const { return grid_; }
  const Mollifier& mollifier() const { return mollifier_; }

  /// Bicubic (tensor cubic Lagrange) interpolation of the table at a
  /// displacement, taken modulo the period.
  Vec2 evaluate(const Vec2& displacement) const;
  /// Trigonometric sum over the table's coefficients; O(G^2) per point.
  Vec2 fourier_sum(const Vec2& displacement) const;

  const SpectralField& component(int a) const { return a == 0 ? *u1_ : *u2_; }

 private:
  friend KernelTable mollified_kernel_table(const GridSpec& grid, const Mollifier& mollifier);
  KernelTable(GridSpec grid, Mollifier mollifier) : grid_(grid), mollifier_(mollifier) {}

  GridSpec grid_;
  Mollifier mollifier_;
  std::shared_ptr<const SpectralField> u1_;
  std::shared_ptr<const SpectralField> u2_;
};

/// Tabulates T with coefficients V^N_hat(k) * velocity_multiplier(k), where
/// V^N_hat is taken from the mass-normalized grid sample of V^N.  Refuses
/// grids on which the support radius spans 4 cells or fewer.
KernelTable mollified_kernel_table(const GridSpec& grid, const Mollifier& mollifier);

}  // namespace vortex
