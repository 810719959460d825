#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "vortex/noise.hpp"
#include "vortex/particles.hpp"

namespace vortex {

enum class SpdeForm { ito, stratonovich };
enum class SpdeVariant { single, coupled, truncated_single, truncated_coupled };
/// How the Ito correction 1/2 sum_k [(sigma_k.grad sigma_k).grad w + sigma_k^T (H w) sigma_k]
/// is evaluated: as 1/2 div(D grad w) with D = sum sigma sigma^T, or term by term.
enum class HessianForm { divergence, pointwise };

struct SpdeConfig {
  GridSpec grid{64};
  double nu = 0.1;
  double dt = 1e-3;
  SpdeForm form = SpdeForm::ito;
  SpdeVariant variant = SpdeVariant::single;
  Truncation truncation;
  HessianForm hessian = HessianForm::divergence;
  double cfl_limit = 0.5;

  bool coupled() const {
    return variant == SpdeVariant::coupled || variant == SpdeVariant::truncated_coupled;
  }
  bool truncated() const {
    return variant == SpdeVariant::truncated_single || variant == SpdeVariant::truncated_coupled;
  }
};

/// One field (single variants) or (omega+, omega-) (coupled variants).
struct SpdeState {
  std::vector<SpectralField> fields;

  SpectralField vorticity() const { return fields.size() == 1 ? fields[0] : fields[0] - fields[1]; }
};

struct SpdeDiagnostics {
  int step = 0;
  double t = 0.0;
  double enstrophy = 0.0;
  double energy = 0.0;
  double mass_plus = 0.0;
  double mass_minus = 0.0;
  double max_u = 0.0;
  double max_omega = 0.0;
};

struct SpdeTrajectory {
  std::vector<int> steps;
  std::vector<double> times;
  std::vector<SpdeState> states;
  /// max |omega| on the grid after every step, including step 0.
  std::vector<double> max_omega;
  bool dense = false;
};

class SpdeSolver {
 public:
  SpdeSolver(SpdeConfig config, NoiseModel noise);

  const SpdeConfig& config() const { return config_; }
  const NoiseModel& noise() const { return noise_; }
  const NoiseGridFields* grid_noise() const { return grid_noise_ ? &*grid_noise_ : nullptr; }

  /// Dealiased initial state; the single variant takes omega0, the coupled
  /// ones (omega0+, omega0-).
  SpdeState initial_state(std::vector<SpectralField> fields) const;

  /// Transport velocity A(u), u = K * omega, A = identity or the clamp.
  VectorField transport_velocity(const SpdeState& state) const;

  /// Full Ito drift per field: nu Lap w - A(u).grad w + Ito correction.
  std::vector<SpectralField> drift_rhs(const SpdeState& state) const;

  /// Pieces of the drift, exposed for the oracles.
  SpectralField transport_term(const VectorField& velocity, const SpectralField& w) const;
  SpectralField ito_correction(const SpectralField& w) const;
  /// -sigma_k . grad w
  SpectralField noise_term(std::size_t k, const SpectralField& w) const;

  SpdeState step_ito(const SpdeState& state, const NoisePath& path, int s) const;
  SpdeState step_stratonovich(const SpdeState& state, const NoisePath& path, int s) const;
  SpdeState step(const SpdeState& state, const NoisePath& path, int s) const;

  SpdeDiagnostics diagnostics(const SpdeState& state, int step) const;

  /// Integrates to the last observation step.  With `dense`, every step is
  /// stored.  Per-step diagnostics go to `diagnostics_csv` when given.
  SpdeTrajectory solve(const SpdeState& initial, const NoisePath& path,
                       const std::vector<int>& observation_steps, bool dense = false,
                       std::ostream* diagnostics_csv = nullptr) const;

 private:
  SpectralField integrating_factor(const SpectralField& f) const;
  SpdeState finish(std::vector<SpectralField> fields) const;
  void check_inputs(const SpdeState& state, const NoisePath& path, int s) const;
  void check_cfl(const VectorField& velocity, int s) const;
  std::vector<SpectralField> nondiffusive_drift(const SpdeState& state, bool with_correction,
                                                int s) const;
  std::vector<SpectralField> noise_increment(const SpdeState& state, const NoisePath& path,
                                             int s) const;

  SpdeConfig config_;
  NoiseModel noise_;
  std::optional<NoiseGridFields> grid_noise_;
  std::vector<double> decay_;  // e^{-nu |k|^2 dt} per half-spectrum index
};

/// Header line matching diagnostics rows.
void write_diagnostics_header(std::ostream& out);
void write_diagnostics_row(std::ostream& out, const SpdeDiagnostics& d);

/// |LHS - RHS| of the weak formulation tested against phi, at each stored
/// step, with left-point quadrature in time and the path's increments for the
/// stochastic integral.  Requires a dense trajectory.
std::vector<double> weak_form_residual(const SpdeSolver& solver, const SpdeTrajectory& trajectory,
                                       const NoisePath& path, const SpectralField& phi);

}  // namespace vortex
