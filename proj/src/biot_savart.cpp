#include "vortex/biot_savart.hpp"

#include <algorithm>
#include <cmath>

#include "vortex/kernels/interpolate.hpp"

namespace vortex {

namespace {

constexpr double kZeroMeanTolerance = 1e-10;

VectorField apply_velocity_multiplier(const SpectralField& omega) {
  const GridSpec& grid = omega.grid();
  std::vector<Complex> u1(grid.spectral_points());
  std::vector<Complex> u2(grid.spectral_points());
  for (int i1 = 0; i1 < grid.size(); ++i1) {
    const int k1 = grid.wavenumber(i1);
    for (int i2 = 0; i2 < grid.half(); ++i2) {
      const int k2 = grid.half_wavenumber(i2);
      const std::size_t idx = grid.spectral_index(i1, i2);
      const auto m = velocity_multiplier(k1, k2);
      // Odd multipliers have no real counterpart on the Nyquist modes.
      u1[idx] = grid.is_nyquist(k2) ? 0.0 : m[0] * omega.coeffs()[idx];
      u2[idx] = grid.is_nyquist(k1) ? 0.0 : m[1] * omega.coeffs()[idx];
    }
  }
  return {SpectralField::from_coeffs(grid, std::move(u1), true),
          SpectralField::from_coeffs(grid, std::move(u2), true), true};
}

}  // namespace

std::array<Complex, 2> velocity_multiplier(int k1, int k2) {
  if (k1 == 0 && k2 == 0) return {Complex(0.0, 0.0), Complex(0.0, 0.0)};
  const double k_sq = static_cast<double>(k1 * k1 + k2 * k2);
  return {Complex(0.0, k2 / k_sq), Complex(0.0, -k1 / k_sq)};
}

VectorField velocity_from_vorticity(const SpectralField& omega) {
  const double mean = std::abs(omega.coeffs()[0]);
  if (mean > kZeroMeanTolerance * std::max(1.0, omega.max_abs_coeff())) {
    throw ConfigError("velocity_from_vorticity requires a zero-mean vorticity");
  }
  return apply_velocity_multiplier(omega);
}

VectorField velocity_from_vorticity_unchecked(const SpectralField& omega) {
  return apply_velocity_multiplier(omega);
}

double green_function_eval(const Vec2& x, int cutoff) {
  if (cutoff < 8) throw ConfigError("green function cutoff must be >= 8");
  const Vec2 r = wrap(x);
  if (std::hypot(r[0], r[1]) < 1e-8) {
    throw ConfigError("green function is singular at the lattice origin");
  }
  const int n = cutoff;
  std::vector<double> c1(n + 1), c2(n + 1), w(n + 1);
  for (int k = 0; k <= n; ++k) {
    c1[k] = std::cos(k * r[0]);
    c2[k] = std::cos(k * r[1]);
    w[k] = 1.0 - static_cast<double>(k) / (n + 1);
  }
  // Sum over k1, k2 >= 0 with multiplicity for the sign flips; sin.sin
  // terms cancel between k2 and -k2.
  double acc = 0.0;
  for (int k1 = 0; k1 <= n; ++k1) {
    const double m1 = k1 == 0 ? 1.0 : 2.0;
    double row = 0.0;
    for (int k2 = (k1 == 0 ? 1 : 0); k2 <= n; ++k2) {
      const double m2 = k2 == 0 ? 1.0 : 2.0;
      row += m2 * w[k2] * c2[k2] / static_cast<double>(k1 * k1 + k2 * k2);
    }
    acc += m1 * w[k1] * c1[k1] * row;
  }
  return acc / kTorusArea;
}

Vec2 KernelTable::evaluate(const Vec2& displacement) const {
  return kernels::interpolate_cubic(u1_->values(), u2_->values(), grid_, wrap(displacement));
}

Vec2 KernelTable::fourier_sum(const Vec2& displacement) const {
  Vec2 out{0.0, 0.0};
  for (int i1 = 0; i1 < grid_.size(); ++i1) {
    const int k1 = grid_.wavenumber(i1);
    for (int i2 = 0; i2 < grid_.half(); ++i2) {
      const int k2 = grid_.half_wavenumber(i2);
      const double weight = (i2 == 0 || i2 == grid_.half() - 1) ? 1.0 : 2.0;
      const Complex phase = std::polar(1.0, k1 * displacement[0] + k2 * displacement[1]);
      const std::size_t idx = grid_.spectral_index(i1, i2);
      out[0] += weight * (u1_->coeffs()[idx] * phase).real();
      out[1] += weight * (u2_->coeffs()[idx] * phase).real();
    }
  }
  return out;
}

KernelTable mollified_kernel_table(const GridSpec& grid, const Mollifier& mollifier) {
  if (mollifier.cells_per_radius(grid) <= 4.0) {
    throw ConfigError("kernel table grid too coarse: mollifier support must exceed 4 cells");
  }
  const SpectralField v = mollifier.sample(grid, true);
  KernelTable table(grid, mollifier);
  VectorField t = apply_velocity_multiplier(v.with_zero_mean());
  table.u1_ = std::make_shared<const SpectralField>(std::move(t.u1));
  table.u2_ = std::make_shared<const SpectralField>(std::move(t.u2));
  return table;
}

}  // namespace vortex
