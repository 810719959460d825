#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <random>
#include <vector>

#include "vortex/biot_savart.hpp"
#include "vortex/initial_data.hpp"
#include "vortex/kernels/deposit.hpp"
#include "vortex/kernels/interpolate.hpp"
#include "vortex/kernels/pairwise.hpp"

using namespace vortex;

namespace {

std::vector<Vec2> scatter(std::size_t n, std::uint64_t seed) { return uniform_ensemble(n, seed, 0).plus; }

double max_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("deposit: serial and OpenMP agree, OpenMP independent of thread count") {
  const GridSpec grid(64);
  const Mollifier m(0.2, 2000);
  const auto x = scatter(2000, 3);
  for (bool conserve : {false, true}) {
    std::vector<double> s(grid.points()), p1(grid.points()), p4(grid.points());
    kernels::serial::deposit(x, 1.0 / 2000, m, grid, conserve, s);
    omp_set_num_threads(1);
    kernels::omp::deposit(x, 1.0 / 2000, m, grid, conserve, p1);
    omp_set_num_threads(4);
    kernels::omp::deposit(x, 1.0 / 2000, m, grid, conserve, p4);
    CHECK(p1 == p4);
    CHECK(max_diff(s, p1) < 1e-12);
  }
}

TEST_CASE("interpolation is exact at nodes") {
  const GridSpec grid(32);
  std::mt19937_64 gen(1);
  std::normal_distribution<double> normal;
  std::vector<double> v(grid.points());
  for (double& x : v) x = normal(gen);
  for (int i1 : {0, 7, 31}) {
    for (int i2 : {0, 12, 31}) {
      const Vec2 x{grid.coord(i1), grid.coord(i2)};
      CHECK(kernels::interpolate_cubic(v, grid, x) == doctest::Approx(v[grid.index(i1, i2)]).epsilon(1e-13));
    }
  }
}

TEST_CASE("interpolation error decays at fourth order") {
  auto f = [](double x1, double x2) { return std::sin(x1 + 0.3) * std::cos(2 * x2) + std::cos(x1 - x2); };
  const auto pts = scatter(500, 11);
  double prev = 0.0;
  for (int g : {16, 32, 64}) {
    const GridSpec grid(g);
    const SpectralField s = SpectralField::from_function(grid, f);
    double err = 0.0;
    for (const auto& x : pts) err = std::max(err, std::abs(kernels::interpolate_cubic(s.values(), grid, x) - f(x[0], x[1])));
    if (prev > 0.0) CHECK(std::log2(prev / err) > 3.7);
    prev = err;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("interpolation: serial and OpenMP identical, paired overload matches scalar") {
  const GridSpec grid(32);
  const SpectralField a = SpectralField::from_function(grid, [](double x, double y) { return std::sin(x) * std::cos(y); });
  const SpectralField b = SpectralField::from_function(grid, [](double x, double y) { return std::cos(3 * x + y); });
  const auto pts = scatter(300, 5);
  std::vector<Vec2> s(pts.size()), p(pts.size());
  kernels::serial::interpolate(a.values(), b.values(), grid, pts, s);
  kernels::omp::interpolate(a.values(), b.values(), grid, pts, p);
  CHECK(s == p);
  CHECK(s[17][1] == doctest::Approx(kernels::interpolate_cubic(b.values(), grid, pts[17])));
}

TEST_CASE("pairwise sums: serial and OpenMP identical; self exclusion") {
  const GridSpec grid(128);
  const Mollifier m(0.2, 256);
  const KernelTable table = mollified_kernel_table(grid, m);
  const auto x = scatter(256, 9);
  std::vector<Vec2> s(x.size()), p(x.size());
  kernels::serial::pairwise_velocity(x, x, 0.5, true, table, s);
  omp_set_num_threads(3);
  kernels::omp::pairwise_velocity(x, x, 0.5, true, table, p);
  CHECK(s == p);

  // A single particle exerts no velocity on itself.
  std::vector<Vec2> one{{0.1, 0.2}}, out(1);
  kernels::serial::pairwise_velocity(one, one, 1.0, true, table, out);
  CHECK(out[0][0] == 0.0);
  CHECK(out[0][1] == 0.0);

  // Equal and opposite: a two-particle system has zero net velocity.
  std::vector<Vec2> two{{0.1, 0.2}, {0.4, -0.1}}, v(2);
  kernels::serial::pairwise_velocity(two, two, 1.0, true, table, v);
  CHECK(v[0][0] + v[1][0] == doctest::Approx(0.0).scale(1.0));
  CHECK(v[0][1] + v[1][1] == doctest::Approx(0.0).scale(1.0));
}
