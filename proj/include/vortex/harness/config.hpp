#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vortex/noise.hpp"
#include "vortex/particles.hpp"
#include "vortex/spde.hpp"

namespace vortex::harness {

struct ExperimentConfig {
  std::string name = "experiment";
  std::uint64_t seed = 1;
  int paths = 8;
  std::filesystem::path output = "out";
  int grid = 128;
  double nu = 0.1;
  double T = 0.25;
  double dt = 1.0 / 512.0;
  int observations = 33;

  std::string initial = "two-mode";
  std::optional<std::filesystem::path> initial_snapshot;
  NoiseSpec noise;

  std::vector<std::size_t> ladder{256, 1024, 4096};
  double beta = 0.2;
  ParticleScheme particle_scheme = ParticleScheme::euler_maruyama_ito;
  InteractionMode interaction = InteractionMode::particle_mesh;
  std::optional<double> truncation;  // M; computed when absent
  bool cross_check = true;

  SpdeVariant variant = SpdeVariant::coupled;
  SpdeForm form = SpdeForm::ito;
  HessianForm hessian = HessianForm::divergence;

  double alpha = 0.5;
  double p = 4.0;
  double eta = 0.4;
  double epsilon = 0.75;

  double threshold = 1.0;
  bool strict_assumptions = true;
  bool record_wallclock = false;
  bool write_particles = false;
  bool write_snapshots = false;

  int n_steps() const;
  std::vector<int> observation_steps() const;
};

struct Validation {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  double beta_bound = 0.0;

  bool ok() const { return errors.empty(); }
};

/// Throws ConfigError on malformed YAML, unknown keys or wrong types.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& yaml_text);

/// 1 / (4 + 2 alpha - 4/p).
double beta_bound(double alpha, double p);

/// Checks the structural requirements and the assumption inequalities
/// p > 2, 2/p < eta < alpha < 1, 0 < beta < beta_bound.  Inequality violations
/// are errors under strict_assumptions and warnings otherwise.
Validation validate_config(const ExperimentConfig& cfg);

/// Canonical JSON of everything that affects results (not the output path).
std::string canonical_json(const ExperimentConfig& cfg);
/// FNV-1a 64 of canonical_json, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

/// Free-space L^1 mass of |K| over the periodic cell, 4 asinh(1); the
/// default truncation is M = 2 * this * ||omega0||_inf.
double kernel_l1_proxy();

}  // namespace vortex::harness
