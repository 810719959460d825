#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vortex/ensemble.hpp"
#include "vortex/mollifier.hpp"

namespace vortex {

/// A bounded initial vorticity, evaluable anywhere on the torus.
struct InitialVorticity {
  std::string name;
  std::function<double(double, double)> omega;
};

/// Named analytic presets: "zero", "cosine" (cos x1), "eigenmode"
/// (cos(x1 + x2)), "two-mode" (cos x1 + cos 2 x2), "two-vortex" (a pair of
/// opposite periodized Gaussians) and "half-step" (sign of x1).
InitialVorticity initial_preset(const std::string& name);

/// Wraps a grid field; off-grid values come from cubic interpolation.
InitialVorticity initial_from_field(const SpectralField& field);

/// omega_0 together with its signed decomposition omega_0^+/- = max(+-omega_0, 0)
/// and the species masses Gamma_+/- = int omega_0^+/- dx.
class SignedInitialData {
 public:
  /// Masses and sup norms come from grid quadrature at `quadrature_points`.
  /// Throws if omega_0 does not have zero mean.
  static SignedInitialData build(InitialVorticity omega0, int quadrature_points = 1024);

  const InitialVorticity& omega0() const { return omega0_; }
  double gamma_plus() const { return gamma_plus_; }
  double gamma_minus() const { return gamma_minus_; }
  double sup_plus() const { return sup_plus_; }
  double sup_minus() const { return sup_minus_; }
  double sup_norm() const { return std::max(sup_plus_, sup_minus_); }

  double plus(double x1, double x2) const { return std::max(omega0_.omega(x1, x2), 0.0); }
  double minus(double x1, double x2) const { return std::max(-omega0_.omega(x1, x2), 0.0); }

  SpectralField omega_on(const GridSpec& grid) const;
  SpectralField plus_on(const GridSpec& grid) const;
  SpectralField minus_on(const GridSpec& grid) const;

 private:
  InitialVorticity omega0_;
  double gamma_plus_ = 0.0;
  double gamma_minus_ = 0.0;
  double sup_plus_ = 0.0;
  double sup_minus_ = 0.0;
};

struct SamplingStats {
  std::size_t proposals_plus = 0;
  std::size_t proposals_minus = 0;
};

/// N i.i.d. draws per species from omega_0^+/- / Gamma_+/- by rejection
/// against a uniform proposal.  Deterministic in (seed, path_index).
/// Throws for a species whose mass is zero.
ParticleEnsemble sample_initial_positions(const SignedInitialData& data, std::size_t n,
                                          std::uint64_t seed, std::uint32_t path_index = 0,
                                          SamplingStats* stats = nullptr);

/// Uniformly placed particles with the given (possibly zero) species masses.
ParticleEnsemble uniform_ensemble(std::size_t n, std::uint64_t seed, std::uint32_t path_index,
                                  double gamma_plus = 0.0, double gamma_minus = 0.0);

struct MomentProbeRow {
  std::size_t n = 0;
  double mean = 0.0;
  double standard_error = 0.0;
};

struct MomentProbe {
  std::vector<MomentProbeRow> rows;
  double log_log_slope = 0.0;
  /// Growth beyond the log-log slope threshold of 0.1.
  bool growth_flagged = false;
};

/// Monte-Carlo estimate of E ||V^N * mu_0^{N,+}||^q_{H^alpha_p} along a ladder of N.
MomentProbe moment_bound_probe(const SignedInitialData& data, double beta,
                               const std::vector<std::size_t>& ladder, double q, double alpha,
                               double p, int replicas, std::uint64_t seed, const GridSpec& grid);

}  // namespace vortex
