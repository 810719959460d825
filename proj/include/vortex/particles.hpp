#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <vector>

#include "vortex/biot_savart.hpp"
#include "vortex/ensemble.hpp"
#include "vortex/noise.hpp"

namespace vortex {

/// Componentwise clamp to [-M, M].
struct Truncation {
  double cap = 1e300;

  Vec2 operator()(const Vec2& v) const {
    return {std::clamp(v[0], -cap, cap), std::clamp(v[1], -cap, cap)};
  }
};

enum class ParticleScheme { euler_maruyama_ito, heun_stratonovich };
enum class InteractionMode { direct_pairwise, particle_mesh, none };

struct StepConfig {
  double dt = 1e-3;
  ParticleScheme scheme = ParticleScheme::euler_maruyama_ito;
  InteractionMode interaction = InteractionMode::particle_mesh;
  double nu = 0.0;
  Truncation truncation;
  /// Compare mesh against direct on a particle subsample at step 0.
  bool cross_check = false;
  double cross_check_tolerance = 1e-3;
};

struct SpeciesDrift {
  std::vector<Vec2> plus;
  std::vector<Vec2> minus;
};

/// Evaluates the truncated mollified interaction for an ensemble.
class InteractionEngine {
 public:
  InteractionEngine(const GridSpec& grid, const Mollifier& mollifier, InteractionMode mode,
                    Truncation truncation);

  InteractionMode mode() const { return mode_; }
  const GridSpec& grid() const { return grid_; }

  /// Truncated drifts F(u_i) for every particle of both species.
  SpeciesDrift operator()(const ParticleEnsemble& e) const;
  /// Untruncated drifts in the chosen mode.
  SpeciesDrift raw(const ParticleEnsemble& e) const;
  SpeciesDrift raw_direct(const ParticleEnsemble& e) const;
  SpeciesDrift raw_mesh(const ParticleEnsemble& e) const;

  /// Direct-sum drift on the first `targets` particles of each species,
  /// against all sources.
  SpeciesDrift direct_subsample(const ParticleEnsemble& e, std::size_t targets) const;

  /// Median relative difference between mesh and direct on a subsample.
  double mesh_direct_discrepancy(const ParticleEnsemble& e, std::size_t targets = 64) const;

 private:
  const KernelTable& table() const;

  GridSpec grid_;
  Mollifier mollifier_;
  InteractionMode mode_;
  Truncation truncation_;
  mutable std::optional<KernelTable> table_;
};

/// One time step.  Ito: X + [F(u) + 1/2 sum sigma.grad sigma] dt + sqrt(2 nu) dB
/// + sum sigma(X) dW.  Heun: the same without the correction, with sigma
/// averaged between X and the predictor.
ParticleEnsemble step(const ParticleEnsemble& e, const SpeciesDrift& drift, const NoisePath& path,
                      int step_index, const StepConfig& config, const NoiseModel& noise);

struct ParticleRun {
  std::vector<double> times;
  std::vector<SpectralField> g_plus;
  std::vector<SpectralField> g_minus;
  std::vector<ParticleEnsemble> snapshots;  // only when requested
  ParticleEnsemble final_state;
  double cross_check_discrepancy = -1.0;

  SpectralField g(std::size_t i) const { return g_plus[i] - g_minus[i]; }
};

/// Integrates to the last observation step, depositing g^{N,+-} = V^N * mu^{N,+-}
/// on `deposit_grid` at each observation step (step indices, ascending).
ParticleRun run_particles(const ParticleEnsemble& initial, const NoisePath& path,
                          const StepConfig& config, const NoiseModel& noise,
                          const InteractionEngine& engine, const Mollifier& mollifier,
                          const GridSpec& deposit_grid, const std::vector<int>& observation_steps,
                          bool keep_snapshots = false);

/// Rows "t,species,i,x1,x2".
void write_particle_csv(const std::filesystem::path& path, const std::vector<double>& times,
                        const std::vector<ParticleEnsemble>& snapshots);

}  // namespace vortex
