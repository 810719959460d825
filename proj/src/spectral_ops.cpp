#include "vortex/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

namespace vortex {

namespace {

template <typename Multiplier>
SpectralField apply_multiplier(const SpectralField& field, Multiplier&& m, bool zero_mean) {
  const GridSpec& grid = field.grid();
  std::vector<Complex> out(field.coeffs().begin(), field.coeffs().end());
  for (int i1 = 0; i1 < grid.size(); ++i1) {
    const int k1 = grid.wavenumber(i1);
    for (int i2 = 0; i2 < grid.half(); ++i2) {
      const int k2 = grid.half_wavenumber(i2);
      out[grid.spectral_index(i1, i2)] *= m(k1, k2);
    }
  }
  return SpectralField::from_coeffs(grid, std::move(out), zero_mean);
}

}  // namespace

std::vector<Complex> forward_transform(const SpectralField& field) {
  return {field.coeffs().begin(), field.coeffs().end()};
}

SpectralField fractional_bessel(const SpectralField& field, double s) {
  return apply_multiplier(
      field,
      [s](int k1, int k2) {
        return Complex(std::pow(1.0 + static_cast<double>(k1 * k1 + k2 * k2), 0.5 * s), 0.0);
      },
      field.zero_mean());
}

double lp_norm(const SpectralField& field, double p) {
  if (!(p >= 1.0)) throw ConfigError("L^p norm requires p >= 1");
  const auto values = field.values();
  double acc = 0.0;
  for (double v : values) acc += std::pow(std::abs(v), p);
  return std::pow(kTorusArea * acc / static_cast<double>(values.size()), 1.0 / p);
}

double sobolev_norm(const SpectralField& field, double s, double p) {
  if (!(p >= 1.0)) throw ConfigError("Sobolev norm requires p >= 1");
  if (p == 2.0) {
    const GridSpec& grid = field.grid();
    const auto coeffs = field.coeffs();
    double acc = 0.0;
    for (int i1 = 0; i1 < grid.size(); ++i1) {
      const int k1 = grid.wavenumber(i1);
      for (int i2 = 0; i2 < grid.half(); ++i2) {
        const int k2 = grid.half_wavenumber(i2);
        // Interior columns stand for both k and -k.
        const double weight = (i2 == 0 || i2 == grid.half() - 1) ? 1.0 : 2.0;
        const double mult = std::pow(1.0 + static_cast<double>(k1 * k1 + k2 * k2), s);
        acc += weight * mult * std::norm(coeffs[grid.spectral_index(i1, i2)]);
      }
    }
    return kTwoPi * std::sqrt(acc);
  }
  return lp_norm(fractional_bessel(field, s), p);
}

double inner_product(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw ConfigError("fields live on different grids");
  const auto a = f.values();
  const auto b = g.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return kTorusArea * acc / static_cast<double>(a.size());
}

SpectralField derivative(const SpectralField& field, int order1, int order2) {
  const GridSpec& grid = field.grid();
  const bool odd = (order1 + order2) % 2 != 0;
  const bool zero_mean = field.zero_mean() || order1 + order2 > 0;
  return apply_multiplier(
      field,
      [&](int k1, int k2) {
        // An odd derivative of the Nyquist mode is not real-representable.
        if (odd && ((order1 % 2 && grid.is_nyquist(k1)) || (order2 % 2 && grid.is_nyquist(k2)))) {
          return Complex(0.0, 0.0);
        }
        Complex m(1.0, 0.0);
        for (int a = 0; a < order1; ++a) m *= Complex(0.0, k1);
        for (int a = 0; a < order2; ++a) m *= Complex(0.0, k2);
        return m;
      },
      zero_mean);
}

VectorField gradient(const SpectralField& field) {
  return {derivative(field, 1, 0), derivative(field, 0, 1), false};
}

SpectralField divergence(const VectorField& field) {
  return derivative(field.u1, 1, 0) + derivative(field.u2, 0, 1);
}

SpectralField laplacian(const SpectralField& field) {
  return apply_multiplier(
      field, [](int k1, int k2) { return Complex(-static_cast<double>(k1 * k1 + k2 * k2), 0.0); },
      true);
}

SpectralField curl(const VectorField& field) {
  return derivative(field.u2, 1, 0) - derivative(field.u1, 0, 1);
}

SpectralField dealias(const SpectralField& field) {
  const GridSpec& grid = field.grid();
  return apply_multiplier(
      field, [&](int k1, int k2) { return Complex(grid.keeps_mode(k1, k2) ? 1.0 : 0.0, 0.0); },
      field.zero_mean());
}

SpectralField pointwise_product(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw ConfigError("fields live on different grids");
  std::vector<double> out(a.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.values()[i] * b.values()[i];
  return SpectralField::from_values(a.grid(), std::move(out));
}

double divergence_defect(const VectorField& field) {
  const GridSpec& grid = field.grid();
  double defect = 0.0;
  double scale = 0.0;
  for (int i1 = 0; i1 < grid.size(); ++i1) {
    const int k1 = grid.wavenumber(i1);
    for (int i2 = 0; i2 < grid.half(); ++i2) {
      const int k2 = grid.half_wavenumber(i2);
      const Complex a = field.u1.coeffs()[grid.spectral_index(i1, i2)];
      const Complex b = field.u2.coeffs()[grid.spectral_index(i1, i2)];
      defect = std::max(defect, std::abs(static_cast<double>(k1) * a + static_cast<double>(k2) * b));
      scale = std::max({scale, std::abs(a), std::abs(b)});
    }
  }
  return scale > 0.0 ? defect / scale : 0.0;
}

}  // namespace vortex
