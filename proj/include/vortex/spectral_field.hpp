#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "vortex/fft.hpp"
#include "vortex/grid.hpp"

namespace vortex {

/// Real scalar field on the periodic grid, holding grid values and Fourier
/// coefficients side by side.  Both representations are filled at
/// construction, so a field is immutable and safe to share across threads.
class SpectralField {
 public:
  static SpectralField from_values(const GridSpec& grid, std::vector<double> values,
                                   bool zero_mean = false);
  static SpectralField from_coeffs(const GridSpec& grid, std::vector<Complex> coeffs,
                                   bool zero_mean = false);
  static SpectralField from_function(const GridSpec& grid,
                                     const std::function<double(double, double)>& f,
                                     bool zero_mean = false);
  static SpectralField zeros(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  bool zero_mean() const { return zero_mean_; }

  double value(int i1, int i2) const { return values_[grid_.index(i1, i2)]; }
  /// Coefficient for any wavenumber in [-G/2, G/2)^2.
  Complex coeff(int k1, int k2) const;

  /// (2 pi)^2 f_hat(0), i.e. the grid quadrature of the field.
  double integral() const { return kTorusArea * coeffs_[0].real(); }
  double max_abs() const;
  double max_abs_coeff() const;

  /// Copy with f_hat(0) = 0 and the zero-mean flag set.
  SpectralField with_zero_mean() const;

  SpectralField operator+(const SpectralField& other) const;
  SpectralField operator-(const SpectralField& other) const;
  SpectralField operator*(double scale) const;

 private:
  SpectralField(GridSpec grid, std::vector<double> values, std::vector<Complex> coeffs,
                bool zero_mean)
      : grid_(grid), values_(std::move(values)), coeffs_(std::move(coeffs)),
        zero_mean_(zero_mean) {}

  GridSpec grid_;
  std::vector<double> values_;
  std::vector<Complex> coeffs_;
  bool zero_mean_ = false;
};

/// Two-component field (u1, u2).
struct VectorField {
  SpectralField u1;
  SpectralField u2;
  bool divergence_free = false;

  const GridSpec& grid() const { return u1.grid(); }
};

}  // namespace vortex
