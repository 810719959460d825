#include "vortex/mollifier.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vortex/kernels/deposit.hpp"

namespace vortex {

double bump_constant() {
  // int V = 2 pi c int_0^{pi/2} r e^{-1/(pi^2 - 4 r^2)} dr; with u = pi^2 - 4 r^2
  // this is (pi c / 4) int_0^{pi^2} e^{-1/u} du.
  static const double c = [] {
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }, 0.0, kPi * kPi, 20, 1e-13);
    return 4.0 / (kPi * integral);
  }();
  return c;
}

double bump_eval(const Vec2& x) {
  const double gap = kPi * kPi - 4.0 * (x[0] * x[0] + x[1] * x[1]);
  return gap > 0.0 ? bump_constant() * std::exp(-1.0 / gap) : 0.0;
}

Mollifier::Mollifier(double beta, double particle_count) : beta_(beta), count_(particle_count) {
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("mollifier beta must lie in (0, 1)");
  if (!(particle_count >= 1.0)) throw ConfigError("mollifier particle count must be >= 1");
  scale_ = std::pow(count_, beta_);
  peak_factor_ = bump_constant() * scale_ * scale_;
}

SpectralField Mollifier::sample(const GridSpec& grid, bool normalized) const {
  std::vector<double> values(grid.points());
  double sum = 0.0;
  for (int i1 = 0; i1 < grid.size(); ++i1) {
    for (int i2 = 0; i2 < grid.size(); ++i2) {
      const double v = (*this)(grid.coord(i1), grid.coord(i2));
      values[grid.index(i1, i2)] = v;
      sum += v;
    }
  }
  if (normalized) {
    const double factor = 1.0 / (sum * grid.spacing() * grid.spacing());
    for (double& v : values) v *= factor;
  }
  return SpectralField::from_values(grid, std::move(values));
}

SpectralField deposit(std::span<const Vec2> positions, double total_weight,
                      const Mollifier& mollifier, const GridSpec& grid, DepositMode mode) {
  if (mollifier.cells_per_radius(grid) < 1.0) {
    throw ConfigError("mollifier support radius is below one grid cell; refine the grid");
  }
  std::vector<double> values(grid.points(), 0.0);
  if (!positions.empty()) {
    const double weight = total_weight / static_cast<double>(positions.size());
    kernels::omp::deposit(positions, weight, mollifier, grid,
                          mode == DepositMode::mass_conserving, values);
  }
  return SpectralField::from_values(grid, std::move(values));
}

double approx_identity_error(const Mollifier& mollifier, const SpectralField& f) {
  const GridSpec& grid = f.grid();
  const SpectralField v = mollifier.sample(grid, true);
  std::vector<Complex> coeffs(grid.spectral_points());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    coeffs[i] = kTorusArea * v.coeffs()[i] * f.coeffs()[i];
  }
  const SpectralField smoothed = SpectralField::from_coeffs(grid, std::move(coeffs));
  return (smoothed - f).max_abs();
}

double tail_mass(const Mollifier& mollifier, const GridSpec& grid, double delta) {
  double acc = 0.0;
  for (int i1 = 0; i1 < grid.size(); ++i1) {
    for (int i2 = 0; i2 < grid.size(); ++i2) {
      const double x1 = grid.coord(i1);
      const double x2 = grid.coord(i2);
      if (x1 * x1 + x2 * x2 >= delta * delta) acc += mollifier(x1, x2);
    }
  }
  return acc * grid.spacing() * grid.spacing();
}

}  // namespace vortex
