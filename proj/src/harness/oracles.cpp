#include "vortex/harness/oracles.hpp"

#include <cmath>
#include <map>
#include <functional>

#include <fmt/format.h>

#include "vortex/biot_savart.hpp"
#include "vortex/initial_data.hpp"
#include "vortex/particles.hpp"
#include "vortex/rng.hpp"
#include "vortex/spde.hpp"
#include "vortex/spectral_ops.hpp"

namespace vortex::harness {

namespace {

OracleResult make(const std::string& name, double value, double tol, std::string detail) {
  return {name, value <= tol, value, tol, std::move(detail)};
}

SpectralField random_zero_mean(const GridSpec& grid, std::uint64_t seed, std::uint32_t index) {
  const rng::Key key = rng::key_from_seed(seed);
  std::vector<double> v(grid.points());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = rng::normal_pair(key, {index, static_cast<std::uint32_t>(i), 0, 99})[0];
  }
  return SpectralField::from_values(grid, std::move(v), true);
}

// The velocity drops Nyquist modes, whose odd derivatives are not real.
SpectralField without_nyquist(const SpectralField& w) {
  const GridSpec& grid = w.grid();
  std::vector<Complex> c(w.coeffs().begin(), w.coeffs().end());
  for (int i1 = 0; i1 < grid.size(); ++i1) {
    for (int i2 = 0; i2 < grid.half(); ++i2) {
      if (grid.is_nyquist(grid.wavenumber(i1)) || grid.is_nyquist(grid.half_wavenumber(i2))) {
        c[grid.spectral_index(i1, i2)] = 0.0;
      }
    }
  }
  return SpectralField::from_coeffs(grid, std::move(c), true);
}

OracleResult heat_decay(unsigned long long) {
  const GridSpec grid(64);
  SpdeConfig c;
  c.grid = grid;
  c.nu = 0.1;
  c.dt = 1e-3;
  const SpdeSolver solver(c, NoiseModel::off());
  auto mode = [](double a, double b) { return std::cos(a + b); };
  const SpdeState s0 = solver.initial_state({SpectralField::from_function(grid, mode, true)});
  const NoisePath path = generate_path(0, 0, c.dt, 500, 1, 0);
  const SpdeTrajectory traj = solver.solve(s0, path, {500});
  const SpectralField exact = SpectralField::from_function(
      grid, [&](double a, double b) { return std::exp(-2.0 * c.nu * 0.5) * mode(a, b); });
  return make("heat-decay", (traj.states.back().vorticity() - exact).max_abs(), 1e-6,
              "max-norm error vs exp(-2 nu t) cos(x1 + x2) at t = 0.5, G = 64, dt = 1e-3");
}

OracleResult biot_savart_identity(unsigned long long seed) {
  double worst = 0.0;
  for (int g : {16, 32}) {
    const GridSpec grid(g);
    for (std::uint32_t i = 0; i < 100; ++i) {
      const SpectralField w = without_nyquist(random_zero_mean(grid, seed, i));
      const VectorField u = velocity_from_vorticity(w);
      const double scale = std::max(1.0, w.max_abs());
      worst = std::max({worst, (curl(u) - w).max_abs() / scale,
                        divergence(u).max_abs() / scale});
    }
  }
  return make("biot-savart", worst, 1e-12, "curl(K*w) = w and div(K*w) = 0, 100 random fields, G in {16, 32}");
}

OracleResult rigid_transport(unsigned long long seed) {
  const GridSpec grid(16);
  const Vec2 c{0.2, 0.1};
  SpdeConfig cfg;
  cfg.grid = grid;
  cfg.nu = 0.0;
  cfg.dt = 1e-5;
  cfg.form = SpdeForm::stratonovich;
  const SpdeSolver solver(cfg, NoiseModel::constant(c));
  // A single Laplacian shell, so the nonlinear transport vanishes identically.
  auto w0 = [](double a, double b) { return std::cos(a) + std::sin(b) + 0.5 * std::sin(a); };
  const int steps = 25000;
  const NoisePath path = generate_path(1, 0, cfg.dt, steps, seed, 0);
  const SpdeTrajectory traj =
      solver.solve(solver.initial_state({SpectralField::from_function(grid, w0, true)}), path, {steps});
  double w = 0.0;
  for (int s = 0; s < steps; ++s) w += path.dw(s, 0);
  const SpectralField exact =
      SpectralField::from_function(grid, [&](double a, double b) { return w0(a - c[0] * w, b - c[1] * w); });
  return make("rigid-transport", (traj.states.back().vorticity() - exact).max_abs(), 1e-4,
              "constant sigma = (0.2, 0.1), nu = 0: omega(t, x) = omega0(x - sigma W_t) at t = 0.25");
}

OracleResult diffusion_law(unsigned long long seed) {
  // 10^4 particles in total, split between the species.
  const std::size_t n = 5000;
  const double nu = 0.05;
  const double dt = 0.01;
  const int steps = 20;
  const ParticleEnsemble e0 = uniform_ensemble(n, seed, 0);
  const NoisePath path = generate_path(0, n, dt, steps, seed, 0);
  StepConfig cfg;
  cfg.dt = dt;
  cfg.nu = nu;
  cfg.interaction = InteractionMode::none;
  const NoiseModel off = NoiseModel::off();
  ParticleEnsemble e = e0;
  std::vector<Vec2> disp_plus(n, Vec2{0, 0}), disp_minus(n, Vec2{0, 0});
  const SpeciesDrift zero{std::vector<Vec2>(n, Vec2{0, 0}), std::vector<Vec2>(n, Vec2{0, 0})};
  for (int s = 0; s < steps; ++s) {
    const ParticleEnsemble next = step(e, zero, path, s, cfg, off);
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 dp = minimum_image(next.plus[i], e.plus[i]);
      const Vec2 dm = minimum_image(next.minus[i], e.minus[i]);
      disp_plus[i] = {disp_plus[i][0] + dp[0], disp_plus[i][1] + dp[1]};
      disp_minus[i] = {disp_minus[i][0] + dm[0], disp_minus[i][1] + dm[1]};
    }
    e = next;
  }
  double msd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    msd += disp_plus[i][0] * disp_plus[i][0] + disp_plus[i][1] * disp_plus[i][1];
    msd += disp_minus[i][0] * disp_minus[i][0] + disp_minus[i][1] * disp_minus[i][1];
  }
  msd /= 2.0 * static_cast<double>(n);
  const double expected = 4.0 * nu * dt * steps;
  return make("diffusion-law", std::abs(msd / expected - 1.0), 0.02,
              fmt::format("mean squared displacement {:.6g} vs 4 nu t = {:.6g}", msd, expected));
}

OracleResult deposition(unsigned long long seed) {
  const GridSpec grid(64);
  const SignedInitialData data = SignedInitialData::build(initial_preset("two-mode"));
  double worst = 0.0;
  for (std::size_t n : {256u, 1024u}) {
    const ParticleEnsemble e = sample_initial_positions(data, n, seed, 0);
    const Mollifier m(0.2, static_cast<double>(n));
    worst = std::max({worst, std::abs(deposit(e.plus, e.gamma_plus, m, grid).integral() / e.gamma_plus - 1.0),
                      std::abs(deposit(e.minus, e.gamma_minus, m, grid).integral() / e.gamma_minus - 1.0)});
  }
  return make("deposition", worst, 1e-6, "relative error of int g^{N,+-} against Gamma_+-");
}

OracleResult mesh_direct(unsigned long long seed) {
  const GridSpec grid(256);
  const std::size_t n = 64;
  const SignedInitialData data = SignedInitialData::build(initial_preset("two-mode"));
  const ParticleEnsemble e = sample_initial_positions(data, n, seed, 0);
  const Mollifier m(0.2, static_cast<double>(n));
  const InteractionEngine engine(grid, m, InteractionMode::particle_mesh, Truncation{});
  return make("mesh-direct", engine.mesh_direct_discrepancy(e, n), 1e-3,
              "median relative drift difference, 64 particles per species, G = 256");
}

}  // namespace

std::vector<std::string> oracle_names() {
  return {"heat-decay", "biot-savart", "rigid-transport", "diffusion-law", "deposition", "mesh-direct"};
}

std::vector<OracleResult> run_oracle(const std::string& name, unsigned long long seed) {
  static const std::map<std::string, std::function<OracleResult(unsigned long long)>> table = {
      {"heat-decay", heat_decay},       {"biot-savart", biot_savart_identity},
      {"rigid-transport", rigid_transport}, {"diffusion-law", diffusion_law},
      {"deposition", deposition},       {"mesh-direct", mesh_direct},
  };
  if (name == "all") {
    std::vector<OracleResult> out;
    for (const auto& n : oracle_names()) out.push_back(table.at(n)(seed));
    return out;
  }
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown oracle: " + name);
  return {it->second(seed)};
}

}  // namespace vortex::harness
