#include "vortex/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "vortex/kernels/interpolate.hpp"
#include "vortex/rng.hpp"
#include "vortex/spectral_ops.hpp"

namespace vortex {

namespace {

double periodic_gaussian(double x1, double x2, double c1, double c2, double width) {
  double acc = 0.0;
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      const double d1 = x1 - c1 + a * kTwoPi;
      const double d2 = x2 - c2 + b * kTwoPi;
      acc += std::exp(-(d1 * d1 + d2 * d2) / (2.0 * width * width));
    }
  }
  return acc;
}

Vec2 uniform_point(const rng::Key& key, const rng::Counter& ctr) {
  const auto u = rng::uniform_pair(key, ctr);
  return wrap(Vec2{-kPi + kTwoPi * u[0], -kPi + kTwoPi * u[1]});
}

std::vector<Vec2> sample_species(const SignedInitialData& data, bool plus, std::size_t n,
                                 std::uint64_t seed, std::uint32_t path_index,
                                 std::size_t* proposals) {
  const double envelope = plus ? data.sup_plus() : data.sup_minus();
  const rng::Key key = rng::key_from_seed(seed);
  const rng::Stream stream = plus ? rng::Stream::sample_plus : rng::Stream::sample_minus;
  std::vector<Vec2> out;
  out.reserve(n);
  std::uint64_t draw = 0;
  while (out.size() < n) {
    const rng::Counter ctr = rng::make_counter(path_index, static_cast<std::uint32_t>(draw),
                                               static_cast<std::uint32_t>(draw >> 32), stream);
    // Two counters per proposal: one for the point, one for the acceptance test.
    const Vec2 x = uniform_point(key, ctr);
    const rng::Counter accept_ctr = {ctr[0], ctr[1], ctr[2] | 0x80000000u, ctr[3]};
    const double u = rng::uniform_pair(key, accept_ctr)[0];
    ++draw;
    const double density = plus ? data.plus(x[0], x[1]) : data.minus(x[0], x[1]);
    if (u * envelope < density) out.push_back(x);
  }
  if (proposals) *proposals = draw;
  return out;
}

}  // namespace

InitialVorticity initial_preset(const std::string& name) {
  if (name == "zero") return {name, [](double, double) { return 0.0; }};
  if (name == "cosine") return {name, [](double x1, double) { return std::cos(x1); }};
  if (name == "eigenmode") return {name, [](double x1, double x2) { return std::cos(x1 + x2); }};
  if (name == "two-mode") {
    return {name, [](double x1, double x2) { return std::cos(x1) + std::cos(2.0 * x2); }};
  }
  if (name == "two-vortex") {
    return {name, [](double x1, double x2) {
              return periodic_gaussian(x1, x2, -1.0, 0.0, 0.5) -
                     periodic_gaussian(x1, x2, 1.0, 0.0, 0.5);
            }};
  }
  if (name == "half-step") {
    return {name, [](double x1, double) { return x1 >= 0.0 ? 1.0 : -1.0; }};
  }
  throw ConfigError("unknown initial-data preset: " + name);
}

InitialVorticity initial_from_field(const SpectralField& field) {
  auto shared = std::make_shared<const SpectralField>(field);
  return {"snapshot", [shared](double x1, double x2) {
            return kernels::interpolate_cubic(shared->values(), shared->grid(), Vec2{x1, x2});
          }};
}

SignedInitialData SignedInitialData::build(InitialVorticity omega0, int quadrature_points) {
  SignedInitialData data;
  data.omega0_ = std::move(omega0);
  const GridSpec grid(quadrature_points);
  double sum_plus = 0.0;
  double sum_minus = 0.0;
  double sum_abs = 0.0;
  for (int i1 = 0; i1 < grid.size(); ++i1) {
    for (int i2 = 0; i2 < grid.size(); ++i2) {
      const double w = data.omega0_.omega(grid.coord(i1), grid.coord(i2));
      if (w > 0.0) {
        sum_plus += w;
        data.sup_plus_ = std::max(data.sup_plus_, w);
      } else {
        sum_minus -= w;
        data.sup_minus_ = std::max(data.sup_minus_, -w);
      }
      sum_abs += std::abs(w);
    }
  }
  const double cell = grid.spacing() * grid.spacing();
  data.gamma_plus_ = sum_plus * cell;
  data.gamma_minus_ = sum_minus * cell;
  if (std::abs(sum_plus - sum_minus) > 1e-10 * std::max(1.0, sum_abs)) {
    throw ConfigError("initial vorticity must have zero mean (Gamma+ != Gamma-)");
  }
  // The grid maximum can sit slightly below the true supremum; pad the
  // rejection envelope so it stays an upper bound.
  data.sup_plus_ *= 1.001;
  data.sup_minus_ *= 1.001;
  return data;
}

SpectralField SignedInitialData::omega_on(const GridSpec& grid) const {
  return SpectralField::from_function(grid, omega0_.omega, true);
}

SpectralField SignedInitialData::plus_on(const GridSpec& grid) const {
  return SpectralField::from_function(grid, [this](double a, double b) { return plus(a, b); });
}

SpectralField SignedInitialData::minus_on(const GridSpec& grid) const {
  return SpectralField::from_function(grid, [this](double a, double b) { return minus(a, b); });
}

ParticleEnsemble sample_initial_positions(const SignedInitialData& data, std::size_t n,
                                          std::uint64_t seed, std::uint32_t path_index,
                                          SamplingStats* stats) {
  if (!(data.gamma_plus() > 0.0) || !(data.gamma_minus() > 0.0)) {
    throw ConfigError("cannot sample a vortex species with zero mass");
  }
  ParticleEnsemble ensemble;
  ensemble.gamma_plus = data.gamma_plus();
  ensemble.gamma_minus = data.gamma_minus();
  SamplingStats local;
  ensemble.plus = sample_species(data, true, n, seed, path_index, &local.proposals_plus);
  ensemble.minus = sample_species(data, false, n, seed, path_index, &local.proposals_minus);
  if (stats) *stats = local;
  return ensemble;
}

ParticleEnsemble uniform_ensemble(std::size_t n, std::uint64_t seed, std::uint32_t path_index,
                                  double gamma_plus, double gamma_minus) {
  ParticleEnsemble ensemble;
  ensemble.gamma_plus = gamma_plus;
  ensemble.gamma_minus = gamma_minus;
  const rng::Key key = rng::key_from_seed(seed);
  ensemble.plus.resize(n);
  ensemble.minus.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint32_t>(i);
    ensemble.plus[i] = uniform_point(key, rng::make_counter(path_index, idx, 0, rng::Stream::uniform_positions));
    ensemble.minus[i] = uniform_point(key, rng::make_counter(path_index, idx, 1, rng::Stream::uniform_positions));
  }
  return ensemble;
}

MomentProbe moment_bound_probe(const SignedInitialData& data, double beta,
                               const std::vector<std::size_t>& ladder, double q, double alpha,
                               double p, int replicas, std::uint64_t seed, const GridSpec& grid) {
  if (!(q > 0.0)) throw ConfigError("moment probe requires q > 0");
  if (replicas < 2) throw ConfigError("moment probe needs at least two replicas");
  MomentProbe probe;
  for (std::size_t n : ladder) {
    const Mollifier mollifier(beta, static_cast<double>(n));
    std::vector<double> samples(replicas);
    for (int r = 0; r < replicas; ++r) {
      const ParticleEnsemble e =
          sample_initial_positions(data, n, seed, static_cast<std::uint32_t>(r));
      const SpectralField g = deposit(e.plus, e.gamma_plus, mollifier, grid);
      samples[r] = std::pow(sobolev_norm(g, alpha, p), q);
    }
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / replicas;
    double var = 0.0;
    for (double s : samples) var += (s - mean) * (s - mean);
    var /= (replicas - 1);
    probe.rows.push_back({n, mean, std::sqrt(var / replicas)});
  }
  if (probe.rows.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(probe.rows.size());
    for (const auto& row : probe.rows) {
      const double x = std::log(static_cast<double>(row.n));
      const double y = std::log(row.mean);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    probe.log_log_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    probe.growth_flagged = probe.log_log_slope > 0.1;
  }
  return probe;
}

}  // namespace vortex
