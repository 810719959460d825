#pragma once

#include <complex>
#include <memory>
#include <span>

#include "vortex/grid.hpp"

namespace vortex {

using Complex = std::complex<double>;

/// Real <-> half-complex transform pair on a GridSpec.
///
/// Coefficients are normalized as f_hat(k) = (2 pi)^-2 int f(x) e^{-i k.x} dx,
/// evaluated by the grid quadrature mean_j f(x_j) e^{-i k.x_j}.  The grid
/// origin sits at -pi, which contributes the phase (-1)^(k1+k2).
///
/// Instances are cheap handles onto a process-wide plan cache and may be
/// used concurrently from several threads.
class FourierTransform {
 public:
  explicit FourierTransform(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }

  void forward(std::span<const double> values, std::span<Complex> coeffs) const;
  /// Input coefficients are left untouched.
  void inverse(std::span<const Complex> coeffs, std::span<double> values) const;

 private:
  struct Plans;
  GridSpec grid_;
  std::shared_ptr<const Plans> plans_;
};

}  // namespace vortex
