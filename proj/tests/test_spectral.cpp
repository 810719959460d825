#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "vortex/biot_savart.hpp"
#include "vortex/spectral_ops.hpp"

using namespace vortex;

namespace {

// O(G^4) DFT straight from the definition.
Complex brute_coeff(const SpectralField& f, int k1, int k2) {
  const GridSpec& g = f.grid();
  Complex acc = 0.0;
  for (int i1 = 0; i1 < g.size(); ++i1) {
    for (int i2 = 0; i2 < g.size(); ++i2) {
      const double th = k1 * g.coord(i1) + k2 * g.coord(i2);
      acc += f.value(i1, i2) * std::exp(Complex(0.0, -th));
    }
  }
  return acc / static_cast<double>(g.points());
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridSpec(7), ConfigError);
  CHECK_THROWS_AS(GridSpec(2), ConfigError);
  CHECK_THROWS_AS(GridSpec(16, 0.0), ConfigError);
  const GridSpec g(16);
  CHECK(g.coord(0) == doctest::Approx(-kPi));
  CHECK(g.wavenumber(15) == -1);
  CHECK(g.keeps_mode(5, -5));
  CHECK_FALSE(g.keeps_mode(6, 0));
}

TEST_CASE("wrap and minimum image") {
  CHECK(wrap_coordinate(kPi) == doctest::Approx(-kPi));
  CHECK(wrap_coordinate(3 * kPi + 0.5) == doctest::Approx(-kPi + 0.5));
  const Vec2 d = minimum_image(Vec2{3.0, -3.0}, Vec2{-3.0, 3.0});
  CHECK(d[0] == doctest::Approx(6.0 - kTwoPi));
  CHECK(d[1] == doctest::Approx(kTwoPi - 6.0));
}

TEST_CASE("forward transform matches the brute-force DFT") {
  std::mt19937_64 gen(1);
  const GridSpec g(8);
  const SpectralField f = test::random_field(g, gen, false);
  for (int k1 = -3; k1 <= 3; ++k1) {
    for (int k2 = -3; k2 <= 4; ++k2) {
      CHECK(std::abs(f.coeff(k1, k2) - brute_coeff(f, k1, k2)) < 1e-14);
    }
  }
}

TEST_CASE("round trip and reality") {
  std::mt19937_64 gen(2);
  const GridSpec g(32);
  const SpectralField f = test::random_field(g, gen, false);
  const SpectralField back = SpectralField::from_coeffs(g, forward_transform(f));
  CHECK((back - f).max_abs() < 1e-13);
  CHECK(std::abs(f.coeff(3, -2) - std::conj(f.coeff(-3, 2))) < 1e-15);
}

TEST_CASE("derivatives of trig modes") {
  const GridSpec g(32);
  const SpectralField f = SpectralField::from_function(g, [](double a, double b) { return std::sin(3 * a) * std::cos(2 * b); });
  const SpectralField d1 = derivative(f, 1, 0);
  const SpectralField e1 = SpectralField::from_function(g, [](double a, double b) { return 3 * std::cos(3 * a) * std::cos(2 * b); });
  CHECK((d1 - e1).max_abs() < 1e-12);
  const SpectralField lap = laplacian(f);
  CHECK((lap + f * 13.0).max_abs() < 1e-11);
  const SpectralField mixed = derivative(f, 1, 1);
  const SpectralField e2 = SpectralField::from_function(g, [](double a, double b) { return -6 * std::cos(3 * a) * std::sin(2 * b); });
  CHECK((mixed - e2).max_abs() < 1e-11);
}

TEST_CASE("integral and inner product") {
  const GridSpec g(16);
  const SpectralField one = SpectralField::from_function(g, [](double, double) { return 1.0; });
  CHECK(one.integral() == doctest::Approx(kTorusArea));
  const SpectralField c = SpectralField::from_function(g, [](double a, double) { return std::cos(a); }, true);
  CHECK(inner_product(c, c) == doctest::Approx(2 * kPi * kPi));
  CHECK(std::abs(inner_product(c, one)) < 1e-12);
}

TEST_CASE("Parseval: spectral H^0_2 equals grid L^2") {
  std::mt19937_64 gen(3);
  for (int G : {16, 32, 64}) {
    const GridSpec g(G);
    for (int r = 0; r < 10; ++r) {
      const SpectralField f = test::random_field(g, gen, r % 2 == 0);
      const double a = sobolev_norm(f, 0.0, 2.0);
      const double b = lp_norm(f, 2.0);
      CHECK(std::abs(a - b) <= 1e-12 * b);
    }
  }
}

TEST_CASE("H^s_p against refined-grid quadrature of the exact Bessel potential") {
  // f = sum of a few modes; (I - Delta)^{s/2} f is again explicit.
  const double s = 0.7;
  const double p = 4.0;
  struct Mode { int k1, k2; double a; };
  const std::vector<Mode> modes{{1, 0, 1.0}, {2, -1, 0.5}, {0, 3, -0.7}};
  auto f = [&](double x1, double x2) {
    double v = 0.0;
    for (const auto& m : modes) v += m.a * std::cos(m.k1 * x1 + m.k2 * x2);
    return v;
  };
  auto bessel = [&](double x1, double x2) {
    double v = 0.0;
    for (const auto& m : modes) {
      v += m.a * std::pow(1.0 + m.k1 * m.k1 + m.k2 * m.k2, s / 2) * std::cos(m.k1 * x1 + m.k2 * x2);
    }
    return v;
  };
  const GridSpec fine(256);
  double acc = 0.0;
  for (int i = 0; i < fine.size(); ++i) {
    for (int j = 0; j < fine.size(); ++j) acc += std::pow(std::abs(bessel(fine.coord(i), fine.coord(j))), p);
  }
  const double oracle = std::pow(kTorusArea * acc / fine.points(), 1.0 / p);
  const double got = sobolev_norm(SpectralField::from_function(GridSpec(32), f), s, p);
  CHECK(std::abs(got / oracle - 1.0) < 1e-6);
  CHECK_THROWS_AS(sobolev_norm(SpectralField::from_function(GridSpec(32), f), s, 0.5), ConfigError);
}

TEST_CASE("Sobolev norms are monotone in s") {
  std::mt19937_64 gen(4);
  const GridSpec g(32);
  const SpectralField f = test::random_field(g, gen);
  CHECK(sobolev_norm(f, -0.5, 2) < sobolev_norm(f, 0.0, 2));
  CHECK(sobolev_norm(f, 0.0, 2) < sobolev_norm(f, 0.5, 2));
}

TEST_CASE("K * v bound: ||K*v||_{H^{1-a}_2} <= sqrt(2) ||v||_{H^{-a}_2}") {
  std::mt19937_64 gen(5);
  const GridSpec g(32);
  for (double a : {0.0, 0.25, 0.5, 0.9}) {
    for (int r = 0; r < 25; ++r) {
      const SpectralField v = test::random_field(g, gen);
      const VectorField u = velocity_from_vorticity(v);
      const double lhs = std::hypot(sobolev_norm(u.u1, 1 - a, 2), sobolev_norm(u.u2, 1 - a, 2));
      CHECK(lhs <= std::sqrt(2.0) * sobolev_norm(v, -a, 2));
    }
  }
}

TEST_CASE("dealias zeroes exactly the high modes") {
  const GridSpec g(24);
  const SpectralField f = SpectralField::from_function(g, [](double a, double b) { return std::cos(8 * a) + std::sin(9 * b) + std::cos(a); });
  const SpectralField d = dealias(f);
  const SpectralField keep = SpectralField::from_function(g, [](double a, double b) { return std::cos(8 * a) + std::cos(a); });
  CHECK((d - keep).max_abs() < 1e-13);
}
