#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "vortex/initial_data.hpp"
#include "vortex/particles.hpp"

using namespace vortex;

namespace {

double torus_distance(const Vec2& a, const Vec2& b) {
  return std::hypot(minimum_image(a[0] - b[0]), minimum_image(a[1] - b[1]));
}

}  // namespace

TEST_CASE("truncation clamps componentwise") {
  const Truncation t{2.0};
  const Vec2 v = t({3.0, -0.5});
  CHECK(v[0] == 2.0);
  CHECK(v[1] == -0.5);
  CHECK(t({-7.0, -7.0})[1] == -2.0);
}

TEST_CASE("constant noise without interaction is a rigid shift by c W_t, both schemes") {
  const Vec2 c{0.3, -0.2};
  const NoiseModel noise = NoiseModel::constant(c);
  const ParticleEnsemble e0 = uniform_ensemble(50, 4, 0, 1.0, 1.0);
  const int steps = 200;
  const double dt = 1e-3;
  const NoisePath path = generate_path(1, 50, dt, steps, 8, 0);
  double w = 0.0;
  for (int s = 0; s < steps; ++s) w += path.dw(s, 0);
  const GridSpec grid(32);
  const Mollifier m(0.1, 50);
  const InteractionEngine engine(grid, m, InteractionMode::none, {});
  for (auto scheme : {ParticleScheme::euler_maruyama_ito, ParticleScheme::heun_stratonovich}) {
    StepConfig cfg{dt, scheme, InteractionMode::none, 0.0};
    const ParticleRun run = run_particles(e0, path, cfg, noise, engine, m, grid, {steps});
    for (std::size_t i = 0; i < 50; ++i) {
      const Vec2 want = wrap({e0.plus[i][0] + c[0] * w, e0.plus[i][1] + c[1] * w});
      CHECK(torus_distance(run.final_state.plus[i], want) < 1e-12);
    }
  }
}

TEST_CASE("Heun and Euler coincide when the noise is off") {
  const ParticleEnsemble e0 = uniform_ensemble(64, 2, 0, 1.0, 1.0);
  const GridSpec grid(64);
  const Mollifier m(0.1, 64);
  const InteractionEngine engine(grid, m, InteractionMode::particle_mesh, {});
  const NoisePath path = generate_path(0, 64, 0.01, 10, 1, 0);
  StepConfig a{0.01, ParticleScheme::euler_maruyama_ito, InteractionMode::particle_mesh, 0.0};
  StepConfig b = a;
  b.scheme = ParticleScheme::heun_stratonovich;
  const auto ra = run_particles(e0, path, a, NoiseModel::off(), engine, m, grid, {10});
  const auto rb = run_particles(e0, path, b, NoiseModel::off(), engine, m, grid, {10});
  CHECK(ra.final_state.plus == rb.final_state.plus);
  CHECK(ra.final_state.minus == rb.final_state.minus);
}

TEST_CASE("direct sums: signed total momentum of the drift vanishes") {
  const std::size_t n = 200;
  const ParticleEnsemble e = uniform_ensemble(n, 13, 0, 2.0, 3.0);
  const GridSpec grid(128);
  const Mollifier m(0.2, n);
  const InteractionEngine engine(grid, m, InteractionMode::direct_pairwise, {});
  const SpeciesDrift d = engine.raw(e);
  Vec2 total{0.0, 0.0};
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int a = 0; a < 2; ++a) {
      total[a] += e.weight_plus() * d.plus[i][a] - e.weight_minus() * d.minus[i][a];
      scale += std::abs(e.weight_plus() * d.plus[i][a]);
    }
  }
  CHECK(std::abs(total[0]) < 1e-12 * scale);
  CHECK(std::abs(total[1]) < 1e-12 * scale);
}

TEST_CASE("truncated drift is bounded by M") {
  const ParticleEnsemble e = uniform_ensemble(300, 1, 0, 20.0, 20.0);
  const GridSpec grid(64);
  const Mollifier m(0.1, 300);
  const InteractionEngine raw(grid, m, InteractionMode::particle_mesh, {});
  const InteractionEngine capped(grid, m, InteractionMode::particle_mesh, Truncation{0.05});
  const SpeciesDrift r = raw(e);
  const SpeciesDrift c = capped(e);
  bool any_clipped = false;
  for (std::size_t i = 0; i < 300; ++i) {
    for (int a = 0; a < 2; ++a) {
      CHECK(std::abs(c.plus[i][a]) <= 0.05);
      CHECK(std::abs(c.minus[i][a]) <= 0.05);
      if (std::abs(r.plus[i][a]) > 0.05) any_clipped = true;
      else CHECK(c.plus[i][a] == r.plus[i][a]);
    }
  }
  CHECK(any_clipped);
}

TEST_CASE("mesh matches direct at G = 128") {
  const auto data = SignedInitialData::build(initial_preset("two-mode"));
  const ParticleEnsemble e = sample_initial_positions(data, 1024, 3);
  const InteractionEngine engine(GridSpec(128), Mollifier(0.2, 1024), InteractionMode::particle_mesh, {});
  CHECK(engine.mesh_direct_discrepancy(e) < 1e-3);
}

TEST_CASE("cross-check failure aborts the run") {
  const auto data = SignedInitialData::build(initial_preset("cosine"));
  const ParticleEnsemble e = sample_initial_positions(data, 256, 3);
  const GridSpec grid(64);
  const Mollifier m(0.1, 256);
  const InteractionEngine engine(grid, m, InteractionMode::particle_mesh, {});
  StepConfig cfg;
  cfg.cross_check = true;
  cfg.cross_check_tolerance = 1e-12;
  const NoisePath path = generate_path(0, 256, cfg.dt, 1, 1, 0);
  CHECK_THROWS_AS(run_particles(e, path, cfg, NoiseModel::off(), engine, m, grid, {1}), NumericalError);
}

TEST_CASE("deposited masses are conserved along a noisy run") {
  const auto data = SignedInitialData::build(initial_preset("two-mode"));
  const ParticleEnsemble e = sample_initial_positions(data, 512, 21);
  const GridSpec grid(64);
  const Mollifier m(0.1, 512);
  const InteractionEngine engine(grid, m, InteractionMode::particle_mesh, {});
  const NoiseModel noise = NoiseModel::composite(0.3);
  const NoisePath path = generate_path(noise.size(), 512, 0.01, 20, 5, 0);
  StepConfig cfg{0.01, ParticleScheme::euler_maruyama_ito, InteractionMode::particle_mesh, 0.05};
  const auto run = run_particles(e, path, cfg, noise, engine, m, grid, {0, 10, 20});
  REQUIRE(run.g_plus.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(run.g_plus[i].integral() == doctest::Approx(data.gamma_plus()).epsilon(1e-12));
    CHECK(run.g_minus[i].integral() == doctest::Approx(data.gamma_minus()).epsilon(1e-12));
  }
  CHECK(run.times[2] == doctest::Approx(0.2));
}

TEST_CASE("a NaN drift raises a numerical error") {
  const ParticleEnsemble e = uniform_ensemble(4, 1, 0, 1.0, 1.0);
  SpeciesDrift d{std::vector<Vec2>(4, Vec2{0.0, 0.0}), std::vector<Vec2>(4, Vec2{0.0, 0.0})};
  d.minus[2][1] = std::numeric_limits<double>::quiet_NaN();
  const NoisePath path = generate_path(0, 4, StepConfig{}.dt, 1, 1, 0);
  CHECK_THROWS_AS(step(e, d, path, 0, StepConfig{}, NoiseModel::off()), NumericalError);
}

TEST_CASE("particle csv layout") {
  const auto dir = std::filesystem::temp_directory_path() / "vortex_particles_test";
  std::filesystem::create_directories(dir);
  const ParticleEnsemble e = uniform_ensemble(2, 1, 0, 1.0, 1.0);
  write_particle_csv(dir / "p.csv", {0.5}, {e});
  std::ifstream in(dir / "p.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,species,i,x1,x2");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
}
