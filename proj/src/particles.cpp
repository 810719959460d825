#include "vortex/particles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "vortex/kernels/interpolate.hpp"
#include "vortex/kernels/pairwise.hpp"

namespace vortex {

InteractionEngine::InteractionEngine(const GridSpec& grid, const Mollifier& mollifier,
                                     InteractionMode mode, Truncation truncation)
    : grid_(grid), mollifier_(mollifier), mode_(mode), truncation_(truncation) {
  if (mode_ != InteractionMode::none && mollifier_.cells_per_radius(grid_) < 1.0) {
    throw ConfigError("interaction grid does not resolve the mollifier support");
  }
}

const KernelTable& InteractionEngine::table() const {
  if (!table_) table_.emplace(mollified_kernel_table(grid_, mollifier_));
  return *table_;
}

SpeciesDrift InteractionEngine::raw_direct(const ParticleEnsemble& e) const {
  return direct_subsample(e, e.count());
}

SpeciesDrift InteractionEngine::direct_subsample(const ParticleEnsemble& e,
                                                 std::size_t targets) const {
  const std::size_t n_plus = std::min(targets, e.plus.size());
  const std::size_t n_minus = std::min(targets, e.minus.size());
  SpeciesDrift d{std::vector<Vec2>(n_plus, Vec2{0.0, 0.0}),
                 std::vector<Vec2>(n_minus, Vec2{0.0, 0.0})};
  const KernelTable& t = table();
  const std::span<const Vec2> tp(e.plus.data(), n_plus);
  const std::span<const Vec2> tm(e.minus.data(), n_minus);
  kernels::omp::pairwise_velocity(tp, e.plus, e.weight_plus(), true, t, d.plus);
  kernels::omp::pairwise_velocity(tp, e.minus, -e.weight_minus(), false, t, d.plus);
  kernels::omp::pairwise_velocity(tm, e.plus, e.weight_plus(), false, t, d.minus);
  kernels::omp::pairwise_velocity(tm, e.minus, -e.weight_minus(), true, t, d.minus);
  return d;
}

SpeciesDrift InteractionEngine::raw_mesh(const ParticleEnsemble& e) const {
  const SpectralField g = deposit(e.plus, e.gamma_plus, mollifier_, grid_) -
                          deposit(e.minus, e.gamma_minus, mollifier_, grid_);
  // K annihilates the mean, so an imbalance between the species is harmless.
  const VectorField u = velocity_from_vorticity_unchecked(g);
  SpeciesDrift d{std::vector<Vec2>(e.plus.size()), std::vector<Vec2>(e.minus.size())};
  kernels::omp::interpolate(u.u1.values(), u.u2.values(), grid_, e.plus, d.plus);
  kernels::omp::interpolate(u.u1.values(), u.u2.values(), grid_, e.minus, d.minus);
  return d;
}

SpeciesDrift InteractionEngine::raw(const ParticleEnsemble& e) const {
  switch (mode_) {
    case InteractionMode::direct_pairwise:
      return raw_direct(e);
    case InteractionMode::particle_mesh:
      return raw_mesh(e);
    case InteractionMode::none:
      break;
  }
  return {std::vector<Vec2>(e.plus.size(), Vec2{0.0, 0.0}),
          std::vector<Vec2>(e.minus.size(), Vec2{0.0, 0.0})};
}

SpeciesDrift InteractionEngine::operator()(const ParticleEnsemble& e) const {
  SpeciesDrift d = raw(e);
  for (auto& v : d.plus) v = truncation_(v);
  for (auto& v : d.minus) v = truncation_(v);
  return d;
}

double InteractionEngine::mesh_direct_discrepancy(const ParticleEnsemble& e,
                                                  std::size_t targets) const {
  const SpeciesDrift mesh = raw_mesh(e);
  const SpeciesDrift direct = direct_subsample(e, targets);
  std::vector<double> rel;
  auto collect = [&rel](const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      const double diff = std::hypot(a[i][0] - b[i][0], a[i][1] - b[i][1]);
      const double ref = std::hypot(b[i][0], b[i][1]);
      if (ref > 0.0) rel.push_back(diff / ref);
    }
  };
  collect(mesh.plus, direct.plus);
  collect(mesh.minus, direct.minus);
  if (rel.empty()) return 0.0;
  auto mid = rel.begin() + static_cast<std::ptrdiff_t>(rel.size() / 2);
  std::nth_element(rel.begin(), mid, rel.end());
  if (rel.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(rel.begin(), mid);
  return 0.5 * (lower + upper);
}

namespace {

bool finite(const Vec2& x) { return std::isfinite(x[0]) && std::isfinite(x[1]); }

void advance_species(const std::vector<Vec2>& x, const std::vector<Vec2>& drift, bool plus,
                     const NoisePath& path, int s, const StepConfig& config,
                     const NoiseModel& noise, std::vector<Vec2>& out) {
  const double dt = config.dt;
  const double diffusion = std::sqrt(2.0 * config.nu);
  const std::size_t n_modes = noise.size();
  const bool ito = config.scheme == ParticleScheme::euler_maruyama_ito;
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const Vec2 db = plus ? path.db_plus(s, i) : path.db_minus(s, i);
    Vec2 base{x[i][0] + drift[i][0] * dt + diffusion * db[0],
              x[i][1] + drift[i][1] * dt + diffusion * db[1]};
    Vec2 transport{0.0, 0.0};
    for (std::size_t k = 0; k < n_modes; ++k) {
      const Vec2 sig = noise.field(k)(x[i]);
      transport[0] += sig[0] * path.dw(s, k);
      transport[1] += sig[1] * path.dw(s, k);
    }
    if (ito) {
      if (n_modes > 0) {
        const Vec2 c = noise.self_advection(x[i]);
        base[0] += 0.5 * c[0] * dt;
        base[1] += 0.5 * c[1] * dt;
      }
      out[i] = wrap(Vec2{base[0] + transport[0], base[1] + transport[1]});
    } else {
      const Vec2 predictor{base[0] + transport[0], base[1] + transport[1]};
      Vec2 corrected = transport;
      for (std::size_t k = 0; k < n_modes; ++k) {
        const Vec2 sig = noise.field(k)(predictor);
        corrected[0] += sig[0] * path.dw(s, k);
        corrected[1] += sig[1] * path.dw(s, k);
      }
      out[i] = wrap(Vec2{base[0] + 0.5 * corrected[0], base[1] + 0.5 * corrected[1]});
    }
  }
}

}  // namespace

ParticleEnsemble step(const ParticleEnsemble& e, const SpeciesDrift& drift, const NoisePath& path,
                      int step_index, const StepConfig& config, const NoiseModel& noise) {
  if (std::abs(path.dt - config.dt) > 1e-12 * config.dt) {
    throw ConfigError("noise path dt does not match the step dt");
  }
  if (step_index < 0 || step_index >= path.n_steps) throw ConfigError("step index outside the noise path");
  if (path.modes != noise.size()) throw ConfigError("noise path and noise model disagree on the mode count");
  if (path.particles < e.count()) throw ConfigError("noise path has too few particle increments");
  ParticleEnsemble next;
  next.gamma_plus = e.gamma_plus;
  next.gamma_minus = e.gamma_minus;
  next.plus.resize(e.plus.size());
  next.minus.resize(e.minus.size());
  advance_species(e.plus, drift.plus, true, path, step_index, config, noise, next.plus);
  advance_species(e.minus, drift.minus, false, path, step_index, config, noise, next.minus);
  for (const auto* species : {&next.plus, &next.minus}) {
    for (std::size_t i = 0; i < species->size(); ++i) {
      if (!finite((*species)[i])) {
        throw NumericalError(fmt::format("non-finite particle position at step {} (particle {}, {})",
                                         step_index, i, species == &next.plus ? "+" : "-"));
      }
    }
  }
  return next;
}

ParticleRun run_particles(const ParticleEnsemble& initial, const NoisePath& path,
                          const StepConfig& config, const NoiseModel& noise,
                          const InteractionEngine& engine, const Mollifier& mollifier,
                          const GridSpec& deposit_grid, const std::vector<int>& observation_steps,
                          bool keep_snapshots) {
  if (!std::is_sorted(observation_steps.begin(), observation_steps.end())) {
    throw ConfigError("observation steps must be ascending");
  }
  const int last = observation_steps.empty() ? 0 : observation_steps.back();
  if (last > path.n_steps) throw ConfigError("observation time beyond the noise path");
  ParticleRun out;
  ParticleEnsemble state = initial;
  std::size_t next_obs = 0;
  auto observe = [&](int s) {
    while (next_obs < observation_steps.size() && observation_steps[next_obs] == s) {
      out.times.push_back(s * config.dt);
      out.g_plus.push_back(deposit(state.plus, state.gamma_plus, mollifier, deposit_grid));
      out.g_minus.push_back(deposit(state.minus, state.gamma_minus, mollifier, deposit_grid));
      if (keep_snapshots) out.snapshots.push_back(state);
      ++next_obs;
    }
  };
  if (config.cross_check && engine.mode() == InteractionMode::particle_mesh && state.count() > 0) {
    out.cross_check_discrepancy = engine.mesh_direct_discrepancy(state);
    if (out.cross_check_discrepancy > config.cross_check_tolerance) {
      throw NumericalError(fmt::format(
          "mesh and direct interactions disagree (median relative difference {:.3e} > {:.1e}); "
          "the mesh under-resolves the mollifier, increase G",
          out.cross_check_discrepancy, config.cross_check_tolerance));
    }
  }
  observe(0);
  for (int s = 0; s < last; ++s) {
    const SpeciesDrift drift = engine(state);
    state = step(state, drift, path, s, config, noise);
    observe(s + 1);
  }
  out.final_state = std::move(state);
  return out;
}

void write_particle_csv(const std::filesystem::path& path, const std::vector<double>& times,
                        const std::vector<ParticleEnsemble>& snapshots) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "t,species,i,x1,x2\n";
  for (std::size_t s = 0; s < snapshots.size(); ++s) {
    for (const auto* species : {&snapshots[s].plus, &snapshots[s].minus}) {
      const char tag = species == &snapshots[s].plus ? '+' : '-';
      for (std::size_t i = 0; i < species->size(); ++i) {
        out << fmt::format("{:.17g},{},{},{:.17g},{:.17g}\n", times[s], tag, i, (*species)[i][0],
                           (*species)[i][1]);
      }
    }
  }
}

}  // namespace vortex
