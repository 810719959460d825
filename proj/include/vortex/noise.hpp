#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vortex/spectral_field.hpp"

namespace vortex {

enum class Phase { cos, sin };

/// coefficient * cos(m.x) or coefficient * sin(m.x); coefficient . m = 0.
struct TrigComponent {
  std::array<int, 2> m{};
  Phase phase = Phase::cos;
  Vec2 coefficient{};
};

using Jacobian = std::array<std::array<double, 2>, 2>;  // J[a][b] = d sigma^a / d x_b

/// One transport field sigma_k: a finite trig polynomial plus a constant vector.
struct NoiseField {
  std::vector<TrigComponent> components;
  Vec2 constant{};

  Vec2 operator()(const Vec2& x) const;
  Jacobian jacobian(const Vec2& x) const;
  /// (sigma . grad) sigma at x.
  Vec2 self_advection(const Vec2& x) const;
};

/// One entry of the user-facing mode list: sigma = a (m^perp/|m|) cos|sin(m.x).
struct NoiseMode {
  std::array<int, 2> m{};
  Phase phase = Phase::cos;
  double amplitude = 0.0;
};

struct NoiseSpec {
  std::string preset = "off";  // off|single|constant|sheared|composite|isotropic-shell|modes
  double amplitude = 0.1;
  Vec2 constant{0.0, 0.0};
  int shell_radius = 1;
  std::vector<NoiseMode> modes;
  std::optional<double> c_nu;
};

/// Grid representation of a model, as consumed by the SPDE solver.
struct NoiseGridFields {
  std::vector<VectorField> sigma;
  VectorField self_advection;  // sum_k sigma_k . grad sigma_k, coefficient 1
  SpectralField d11, d12, d22;  // sum_k sigma_k sigma_k^T
};

class NoiseModel {
 public:
  /// Throws ConfigError for m = 0, a <= 0, duplicate (m, phase) or a
  /// coefficient that is not orthogonal to its wavenumber.
  static NoiseModel build(const std::vector<NoiseField>& fields);
  static NoiseModel from_modes(const std::vector<NoiseMode>& modes);
  static NoiseModel from_spec(const NoiseSpec& spec);

  static NoiseModel off() { return build({}); }
  static NoiseModel single(double amplitude, std::array<int, 2> m = {1, 0}, Phase phase = Phase::cos);
  static NoiseModel constant(const Vec2& c);
  /// sigma = a (sin x2, 0).
  static NoiseModel sheared(double amplitude);
  /// sigma = a (-cos x2, cos x1); sigma . grad sigma does not vanish.
  static NoiseModel composite(double amplitude);
  /// Both phases of every m with round(|m|) = r, one of each +-m pair.
  static NoiseModel isotropic_shell(int radius, double amplitude);

  std::size_t size() const { return fields_.size(); }
  bool is_off() const { return fields_.empty(); }
  const std::vector<NoiseField>& fields() const { return fields_; }
  const NoiseField& field(std::size_t k) const { return fields_[k]; }

  /// sum_k sup |sigma_k|^2 (the operator norm of sigma_k sigma_k^T), from a 256^2 grid.
  double sum_sigma_sq() const { return sum_sigma_sq_; }
  /// Highest |m|_inf among the components, for grid-resolution checks.
  int max_wavenumber() const { return max_wavenumber_; }

  /// sum_k sigma_k . grad sigma_k at x (coefficient 1).
  Vec2 self_advection(const Vec2& x) const;

  /// Spectral assembly on `grid`.  Checks div sigma_k = 0 to 1e-12.
  NoiseGridFields on_grid(const GridSpec& grid) const;

  /// Warning text when sum_sigma_sq exceeds the user budget; empty otherwise.
  std::string budget_warning(std::optional<double> c_nu) const;

 private:
  std::vector<NoiseField> fields_;
  double sum_sigma_sq_ = 0.0;
  int max_wavenumber_ = 0;
};

struct ItoStratonovichDrift {
  VectorField self_advection;  // sum_k sigma_k . grad sigma_k
  SpectralField d11, d12, d22;
};

ItoStratonovichDrift ito_stratonovich_drift(const NoiseModel& model, const GridSpec& grid);

/// Wiener increments for one Monte-Carlo path.
struct NoisePath {
  double dt = 0.0;
  int n_steps = 0;
  std::size_t modes = 0;
  std::size_t particles = 0;
  std::uint64_t master_seed = 0;
  std::uint32_t path_index = 0;
  int coarsening = 1;
  std::vector<double> common;       // n_steps x modes
  std::vector<Vec2> brownian_plus;  // n_steps x particles
  std::vector<Vec2> brownian_minus;

  double dw(int step, std::size_t k) const { return common[step * modes + k]; }
  const Vec2& db_plus(int step, std::size_t i) const { return brownian_plus[step * particles + i]; }
  const Vec2& db_minus(int step, std::size_t i) const { return brownian_minus[step * particles + i]; }

  /// Sums `factor` consecutive increments: the same Brownian path at step dt * factor.
  NoisePath coarsen(int factor) const;
};

/// Increments are keyed on (master_seed, path_index, step, entity), so the
/// common increments do not depend on the particle count.
NoisePath generate_path(std::size_t modes, std::size_t particles, double dt, int n_steps,
                        std::uint64_t master_seed, std::uint32_t path_index);

}  // namespace vortex
