#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <random>

#include "vortex/initial_data.hpp"
#include "vortex/mollifier.hpp"
#include "vortex/spectral_ops.hpp"

using namespace vortex;

TEST_CASE("bump constant matches the exponential-integral closed form") {
  // int_0^a e^{-1/u} du = a e^{-1/a} - E1(1/a)
  const double a = kPi * kPi;
  const double integral = a * std::exp(-1.0 / a) - boost::math::expint(1, 1.0 / a);
  const double c = 4.0 / (kPi * integral);
  CHECK(bump_constant() == doctest::Approx(c).epsilon(1e-12));
  CHECK(bump_constant() == doctest::Approx(0.179139248010161).epsilon(1e-12));
}

TEST_CASE("V has unit mass and support radius pi/2") {
  boost::math::quadrature::tanh_sinh<double> q;
  const double mass = q.integrate([](double r) { return kTwoPi * r * bump_eval({r, 0.0}); }, 0.0, kPi / 2);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(bump_eval({kPi / 2, 0.0}) == 0.0);
  CHECK(bump_eval({0.0, 1.57}) > 0.0);
}

TEST_CASE("V^N scaling") {
  const Mollifier m(0.25, 16.0);  // N^beta = 2
  CHECK(m.scale() == doctest::Approx(2.0));
  CHECK(m.support_radius() == doctest::Approx(kPi / 4));
  CHECK(m(0.1, 0.2) == doctest::Approx(4.0 * bump_eval({0.2, 0.4})).epsilon(1e-14));
  CHECK(m(0.0, kPi / 4 + 1e-9) == 0.0);
  CHECK_THROWS_AS(Mollifier(0.0, 10), ConfigError);
  CHECK_THROWS_AS(Mollifier(0.2, 0.5), ConfigError);
}

TEST_CASE("grid sample mass: raw quadrature error shrinks, normalized is exact") {
  const Mollifier m(0.2, 256);
  double previous = 1.0;
  for (int G : {64, 128, 256}) {
    const GridSpec g(G);
    const double raw = m.sample(g, false).integral();
    const double err = std::abs(raw - 1.0);
    CHECK(err < previous);
    previous = err;
    CHECK(m.sample(g, true).integral() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("mass-conserving deposit integrates to the total weight") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  std::vector<Vec2> x(500);
  for (auto& p : x) p = {u(gen), u(gen)};
  x[0] = {kPi - 1e-9, -kPi};  // straddles the periodic seam
  const GridSpec g(64);
  const Mollifier m(0.2, 500);
  const SpectralField d = deposit(x, 3.5, m, g);
  CHECK(d.integral() == doctest::Approx(3.5).epsilon(1e-13));
  for (double v : d.values()) CHECK(v >= 0.0);
  const SpectralField raw = deposit(x, 3.5, m, g, DepositMode::raw_samples);
  CHECK(raw.integral() == doctest::Approx(3.5).epsilon(1e-2));
}

TEST_CASE("deposit of a particle on a node reproduces the normalized stencil") {
  const GridSpec g(64);
  const Mollifier m(0.1, 64);
  const std::vector<Vec2> x{{g.coord(10), g.coord(20)}};
  const SpectralField d = deposit(x, 1.0, m, g);
  const SpectralField s = m.sample(g, true);
  // s is centred at the node (32, 32), the origin.
  for (int a = -3; a <= 3; ++a) {
    CHECK(d.value(10 + a, 20) == doctest::Approx(s.value(32 + a, 32)).epsilon(1e-12));
  }
}

TEST_CASE("deposit refuses an unresolved mollifier") {
  const GridSpec g(16);
  const Mollifier m(0.5, 1e6);
  const std::vector<Vec2> x{{0.0, 0.0}};
  CHECK_THROWS_AS(deposit(x, 1.0, m, g), ConfigError);
}

TEST_CASE("approximation of the identity: error falls with N") {
  const GridSpec g(128);
  const SpectralField f = SpectralField::from_function(g, [](double a, double b) { return std::cos(a) + std::cos(2 * b); });
  double previous = 1e9;
  for (double n : {64.0, 1024.0, 16384.0}) {
    const double e = approx_identity_error(Mollifier(0.25, n), f);
    CHECK(e < previous);
    previous = e;
  }
}

TEST_CASE("tail mass vanishes outside the support") {
  const GridSpec g(128);
  const Mollifier m(0.25, 256);  // radius pi/8
  CHECK(tail_mass(m, g, kPi / 8 + 1e-9) == 0.0);
  CHECK(tail_mass(m, g, 0.1) > 0.0);
}

TEST_CASE("initial data presets and species masses") {
  const SignedInitialData d = SignedInitialData::build(initial_preset("cosine"), 512);
  // int (cos x1)^+ = 2 pi * 2; the kink limits the grid quadrature to O(h^2).
  CHECK(d.gamma_plus() == doctest::Approx(4.0 * kPi).epsilon(1e-4));
  CHECK(d.gamma_minus() == doctest::Approx(4.0 * kPi).epsilon(1e-4));
  CHECK(d.sup_norm() >= 1.0);
  CHECK_THROWS_AS(initial_preset("nope"), ConfigError);
  const InitialVorticity biased{"biased", [](double a, double) { return 0.5 + std::cos(a); }};
  CHECK_THROWS_AS(SignedInitialData::build(biased, 64), ConfigError);
}

TEST_CASE("rejection sampling matches the species densities") {
  const SignedInitialData d = SignedInitialData::build(initial_preset("cosine"), 256);
  const ParticleEnsemble e = sample_initial_positions(d, 20000, 5, 0);
  // E[cos X1] under density (cos x1)^+ / Gamma_+ is (pi/2) / 2 ... computed exactly:
  // int_{-pi/2}^{pi/2} cos^2 = pi/2, times 2 pi, divided by Gamma_+ = 4 pi -> pi/4.
  double mean_plus = 0.0, mean_minus = 0.0;
  for (const auto& x : e.plus) mean_plus += std::cos(x[0]);
  for (const auto& x : e.minus) mean_minus += std::cos(x[0]);
  mean_plus /= 20000;
  mean_minus /= 20000;
  CHECK(mean_plus == doctest::Approx(kPi / 4).epsilon(0.02));
  CHECK(mean_minus == doctest::Approx(-kPi / 4).epsilon(0.02));
  for (const auto& x : e.plus) CHECK(std::cos(x[0]) >= 0.0);
  // Prefix property: smaller N draws are a prefix of larger ones.
  const ParticleEnsemble small = sample_initial_positions(d, 100, 5, 0);
  for (std::size_t i = 0; i < 100; ++i) CHECK(small.plus[i] == e.plus[i]);
  const SignedInitialData zero = SignedInitialData::build(initial_preset("zero"), 64);
  CHECK_THROWS_AS(sample_initial_positions(zero, 10, 1, 0), ConfigError);
}

TEST_CASE("moment probe: bounded moments for a smooth omega0") {
  const SignedInitialData d = SignedInitialData::build(initial_preset("two-mode"), 256);
  const MomentProbe p = moment_bound_probe(d, 0.1, {256, 1024, 4096}, 2.0, 0.5, 2.0, 4, 3, GridSpec(128));
  CHECK(p.rows.size() == 3);
  CHECK_FALSE(p.growth_flagged);
}
