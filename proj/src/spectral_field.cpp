#include "vortex/spectral_field.hpp"

#include <algorithm>
#include <cmath>

namespace vortex {

namespace {

void check_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw ConfigError("fields live on different grids");
}

}  // namespace

SpectralField SpectralField::from_values(const GridSpec& grid, std::vector<double> values,
                                         bool zero_mean) {
  if (values.size() != grid.points()) throw ConfigError("value array does not match grid");
  std::vector<Complex> coeffs(grid.spectral_points());
  FourierTransform(grid).forward(values, coeffs);
  if (zero_mean) {
    const double mean = coeffs[0].real();
    coeffs[0] = 0.0;
    for (double& v : values) v -= mean;
  }
  return SpectralField(grid, std::move(values), std::move(coeffs), zero_mean);
}

SpectralField SpectralField::from_coeffs(const GridSpec& grid, std::vector<Complex> coeffs,
                                         bool zero_mean) {
  if (coeffs.size() != grid.spectral_points()) {
    throw ConfigError("coefficient array does not match grid");
  }
  if (zero_mean) coeffs[0] = 0.0;
  // Columns k2 = 0 and k2 = -G/2 are self-conjugate under k1 -> -k1; c2r
  // only reads one half of them, so symmetrize to keep both views equal.
  const int n = grid.size();
  for (int i2 : {0, grid.half() - 1}) {
    coeffs[grid.spectral_index(0, i2)].imag(0.0);
    coeffs[grid.spectral_index(n / 2, i2)].imag(0.0);
    for (int i1 = 1; i1 < n / 2; ++i1) {
      Complex& a = coeffs[grid.spectral_index(i1, i2)];
      Complex& b = coeffs[grid.spectral_index(n - i1, i2)];
      const Complex avg = 0.5 * (a + std::conj(b));
      a = avg;
      b = std::conj(avg);
    }
  }
  std::vector<double> values(grid.points());
  FourierTransform(grid).inverse(coeffs, values);
  return SpectralField(grid, std::move(values), std::move(coeffs), zero_mean);
}

SpectralField SpectralField::from_function(const GridSpec& grid,
                                           const std::function<double(double, double)>& f,
                                           bool zero_mean) {
  std::vector<double> values(grid.points());
  for (int i1 = 0; i1 < grid.size(); ++i1) {
    for (int i2 = 0; i2 < grid.size(); ++i2) {
      values[grid.index(i1, i2)] = f(grid.coord(i1), grid.coord(i2));
    }
  }
  return from_values(grid, std::move(values), zero_mean);
}

SpectralField SpectralField::zeros(const GridSpec& grid) {
  return SpectralField(grid, std::vector<double>(grid.points(), 0.0),
                       std::vector<Complex>(grid.spectral_points()), true);
}

Complex SpectralField::coeff(int k1, int k2) const {
  const int n = grid_.size();
  if (k2 < 0 && k2 != -n / 2) {
    k1 = -k1;
    k2 = -k2;
    const int i1 = (k1 % n + n) % n;
    return std::conj(coeffs_[grid_.spectral_index(i1, k2)]);
  }
  const int i1 = (k1 % n + n) % n;
  const int i2 = k2 == -n / 2 ? n / 2 : k2;
  return coeffs_[grid_.spectral_index(i1, i2)];
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SpectralField::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

SpectralField SpectralField::with_zero_mean() const {
  std::vector<double> values = values_;
  std::vector<Complex> coeffs = coeffs_;
  const double mean = coeffs[0].real();
  coeffs[0] = 0.0;
  for (double& v : values) v -= mean;
  return SpectralField(grid_, std::move(values), std::move(coeffs), true);
}

SpectralField SpectralField::operator+(const SpectralField& other) const {
  check_grid(grid_, other.grid_);
  std::vector<double> values(values_.size());
  std::vector<Complex> coeffs(coeffs_.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = values_[i] + other.values_[i];
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = coeffs_[i] + other.coeffs_[i];
  return SpectralField(grid_, std::move(values), std::move(coeffs),
                       zero_mean_ && other.zero_mean_);
}

SpectralField SpectralField::operator-(const SpectralField& other) const {
  return *this + other * -1.0;
}

SpectralField SpectralField::operator*(double scale) const {
  std::vector<double> values(values_.size());
  std::vector<Complex> coeffs(coeffs_.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = scale * values_[i];
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = scale * coeffs_[i];
  return SpectralField(grid_, std::move(values), std::move(coeffs), zero_mean_);
}

}  // namespace vortex
