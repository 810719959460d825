#pragma once

#include <cmath>
#include <span>

#include "vortex/spectral_field.hpp"

namespace vortex {

/// Normalization c of the bump V(x) = c exp(-1/(pi^2 - 4|x|^2)), |x| < pi/2,
/// chosen so that int V = 1.  Computed once by adaptive quadrature.
double bump_constant();

/// Unscaled bump V at a point; zero outside |x| < pi/2.
double bump_eval(const Vec2& x);

/// Scaled approximation of the identity V^N(x) = N^{2 beta} V(N^beta x).
class Mollifier {
 public:
  Mollifier(double beta, double particle_count);

  double beta() const { return beta_; }
  double particle_count() const { return count_; }
  double scale() const { return scale_; }
  double support_radius() const { return kPi / (2.0 * scale_); }
  double cells_per_radius(const GridSpec& grid) const { return support_radius() / grid.spacing(); }

  /// V^N at a displacement already reduced to its minimum image.
  double operator()(double d1, double d2) const {
    const double r2 = scale_ * scale_ * (d1 * d1 + d2 * d2);
    const double gap = kPi * kPi - 4.0 * r2;
    return gap > 0.0 ? peak_factor_ * std::exp(-1.0 / gap) : 0.0;
  }

  /// V^N centred at the origin sampled on the grid.  With `normalized` the
  /// samples are rescaled to unit discrete integral.
  SpectralField sample(const GridSpec& grid, bool normalized = true) const;

 private:
  double beta_;
  double count_;
  double scale_;
  double peak_factor_;  // c N^{2 beta}
};

enum class DepositMode {
  /// Each particle's stencil is rescaled to unit discrete mass, so the grid
  /// integral of the deposit equals the total weight to round-off.
  mass_conserving,
  /// Plain samples (Gamma/N) sum_i V^N(x_j - X_i).
  raw_samples,
};

/// g(x_j) = (total_weight / n) sum_i V^N(x_j - X_i) over the compact support
/// stencil.  Refuses grids on which the support radius is below one cell.
SpectralField deposit(std::span<const Vec2> positions, double total_weight,
                      const Mollifier& mollifier, const GridSpec& grid,
                      DepositMode mode = DepositMode::mass_conserving);

/// ||V^N * f - f||_inf on the grid, with the convolution done spectrally
/// against the normalized sample of V^N.
double approx_identity_error(const Mollifier& mollifier, const SpectralField& f);

/// Grid quadrature of V^N over the complement of the ball of radius delta.
double tail_mass(const Mollifier& mollifier, const GridSpec& grid, double delta);

}  // namespace vortex
