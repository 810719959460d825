#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vortex/noise.hpp"
#include "vortex/spectral_ops.hpp"

using namespace vortex;

namespace {

// Central differences of sigma contracted with sigma, on the grid.
VectorField fd_self_advection(const NoiseModel& model, const GridSpec& grid) {
  const double h = 1e-5;
  auto comp = [&](int a) {
    return SpectralField::from_function(grid, [&, a](double x1, double x2) {
      double acc = 0.0;
      for (const auto& f : model.fields()) {
        const Vec2 s = f({x1, x2});
        const double d1 = (f({x1 + h, x2})[a] - f({x1 - h, x2})[a]) / (2 * h);
        const double d2 = (f({x1, x2 + h})[a] - f({x1, x2 - h})[a]) / (2 * h);
        acc += s[0] * d1 + s[1] * d2;
      }
      return acc;
    });
  };
  return {comp(0), comp(1), false};
}

double fd_error(const NoiseModel& model) {
  const GridSpec grid(64);
  const NoiseGridFields g = model.on_grid(grid);
  const VectorField fd = fd_self_advection(model, grid);
  return std::max((g.self_advection.u1 - fd.u1).max_abs(), (g.self_advection.u2 - fd.u2).max_abs());
}

}  // namespace

TEST_CASE("single mode m = (1,0): sigma = a (0,1) cos x1, divergence-free") {
  const NoiseModel m = NoiseModel::single(0.1);
  REQUIRE(m.size() == 1);
  const Vec2 s = m.field(0)({0.3, -1.0});
  CHECK(s[0] == doctest::Approx(0.0));
  CHECK(s[1] == doctest::Approx(0.1 * std::cos(0.3)));
  const NoiseGridFields g = m.on_grid(GridSpec(32));
  CHECK(divergence(g.sigma[0]).max_abs() < 1e-12);
}

TEST_CASE("constant preset has zero correction") {
  const NoiseModel m = NoiseModel::constant({0.3, -0.2});
  const NoiseGridFields g = m.on_grid(GridSpec(16));
  CHECK(g.self_advection.u1.max_abs() == 0.0);
  CHECK(g.d11.value(3, 4) == doctest::Approx(0.09));
  CHECK(g.d12.value(3, 4) == doctest::Approx(-0.06));
}

TEST_CASE("m = (1,1) correction: spectral vs finite differences") {
  const NoiseModel m = NoiseModel::single(1.0, {1, 1});
  CHECK(fd_error(m) < 1e-6);
  // For the trig family the correction vanishes identically.
  CHECK(m.on_grid(GridSpec(64)).self_advection.u1.max_abs() < 1e-12);
}

TEST_CASE("sheared preset: zero correction, nonzero Hessian term") {
  const NoiseModel m = NoiseModel::sheared(0.5);
  const Vec2 s = m.field(0)({0.0, 1.0});
  CHECK(s[0] == doctest::Approx(0.5 * std::sin(1.0)));
  CHECK(s[1] == 0.0);
  const NoiseGridFields g = m.on_grid(GridSpec(32));
  CHECK(g.self_advection.u1.max_abs() < 1e-12);
  CHECK(g.d11.max_abs() == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(fd_error(m) < 1e-6);
}

TEST_CASE("composite preset: nonzero correction verified by finite differences") {
  const NoiseModel m = NoiseModel::composite(0.7);
  const NoiseGridFields g = m.on_grid(GridSpec(64));
  CHECK(g.self_advection.u1.max_abs() > 0.1);
  CHECK(fd_error(m) < 1e-6);
  // sigma.grad sigma = a^2 (cos x1 sin x2, sin x1 cos x2)
  const Vec2 c = m.self_advection({0.4, 1.1});
  CHECK(c[0] == doctest::Approx(0.49 * std::cos(0.4) * std::sin(1.1)));
  CHECK(c[1] == doctest::Approx(0.49 * std::sin(0.4) * std::cos(1.1)));
}

TEST_CASE("antiparallel pair doubles the correction") {
  NoiseField f = NoiseModel::composite(1.0).field(0);
  NoiseField g = f;
  for (auto& c : g.components) c.coefficient = {-c.coefficient[0], -c.coefficient[1]};
  const NoiseModel single = NoiseModel::build({f});
  const NoiseModel pair = NoiseModel::build({f, g});
  const Vec2 a = single.self_advection({0.2, 0.9});
  const Vec2 b = pair.self_advection({0.2, 0.9});
  CHECK(b[0] == doctest::Approx(2 * a[0]));
  CHECK(b[1] == doctest::Approx(2 * a[1]));
}

TEST_CASE("tensor for m = (1,0), a = 1, cos is (0,0; 0,cos^2 x1)") {
  const NoiseGridFields g = NoiseModel::single(1.0).on_grid(GridSpec(32));
  const ItoStratonovichDrift d = ito_stratonovich_drift(NoiseModel::single(1.0), GridSpec(32));
  CHECK(d.d11.max_abs() < 1e-15);
  CHECK(d.d12.max_abs() < 1e-15);
  CHECK(d.d22.max_abs() == doctest::Approx(1.0));
  CHECK(g.d22.value(5, 0) == doctest::Approx(std::pow(std::cos(GridSpec(32).coord(5)), 2)));
}

TEST_CASE("sum_sigma_sq is additive and quadratic in the amplitude") {
  const double one = NoiseModel::single(0.1).sum_sigma_sq();
  CHECK(one == doctest::Approx(0.01));
  CHECK(NoiseModel::single(0.3).sum_sigma_sq() == doctest::Approx(9 * one));
  const NoiseModel two = NoiseModel::from_modes({{{1, 0}, Phase::cos, 0.1}, {{0, 2}, Phase::sin, 0.2}});
  CHECK(two.sum_sigma_sq() == doctest::Approx(0.05));
  CHECK(two.budget_warning(0.01).find("C_nu") != std::string::npos);
  CHECK(two.budget_warning(1.0).empty());
}

TEST_CASE("invalid mode lists are rejected") {
  CHECK_THROWS_AS(NoiseModel::from_modes({{{0, 0}, Phase::cos, 0.1}}), ConfigError);
  CHECK_THROWS_AS(NoiseModel::from_modes({{{1, 0}, Phase::cos, -0.1}}), ConfigError);
  CHECK_THROWS_AS(NoiseModel::from_modes({{{1, 0}, Phase::cos, 0.1}, {{1, 0}, Phase::cos, 0.2}}), ConfigError);
  CHECK_NOTHROW(NoiseModel::from_modes({{{1, 0}, Phase::cos, 0.1}, {{1, 0}, Phase::sin, 0.2}}));
  CHECK_THROWS_AS(NoiseModel::build({NoiseField{{TrigComponent{{1, 0}, Phase::cos, {1.0, 0.0}}}, {0, 0}}}), ConfigError);
  CHECK_THROWS_AS(NoiseModel::single(1.0, {9, 0}).on_grid(GridSpec(16)), ConfigError);
}

TEST_CASE("isotropic shell: every field divergence-free, both phases present") {
  const NoiseModel m = NoiseModel::isotropic_shell(2, 0.1);
  CHECK(m.size() % 2 == 0);
  CHECK(m.size() >= 4);
  const NoiseGridFields g = m.on_grid(GridSpec(32));
  for (const auto& s : g.sigma) CHECK(divergence(s).max_abs() < 1e-12);
  CHECK(NoiseModel::from_spec(NoiseSpec{}).is_off());
}
