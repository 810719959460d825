#include "vortex/noise.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "vortex/spectral_ops.hpp"

namespace vortex {

namespace {

double phase_value(Phase p, double theta) { return p == Phase::cos ? std::cos(theta) : std::sin(theta); }

// d/dtheta of the phase function.
double phase_slope(Phase p, double theta) { return p == Phase::cos ? -std::sin(theta) : std::cos(theta); }

NoiseField mode_field(const NoiseMode& mode) {
  const double norm = std::hypot(mode.m[0], mode.m[1]);
  const Vec2 perp{-mode.m[1] / norm, mode.m[0] / norm};
  return NoiseField{{TrigComponent{mode.m, mode.phase, {mode.amplitude * perp[0], mode.amplitude * perp[1]}}},
                    {0.0, 0.0}};
}

}  // namespace

Vec2 NoiseField::operator()(const Vec2& x) const {
  Vec2 out = constant;
  for (const auto& c : components) {
    const double v = phase_value(c.phase, c.m[0] * x[0] + c.m[1] * x[1]);
    out[0] += c.coefficient[0] * v;
    out[1] += c.coefficient[1] * v;
  }
  return out;
}

Jacobian NoiseField::jacobian(const Vec2& x) const {
  Jacobian j{};
  for (const auto& c : components) {
    const double s = phase_slope(c.phase, c.m[0] * x[0] + c.m[1] * x[1]);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) j[a][b] += c.coefficient[a] * c.m[b] * s;
    }
  }
  return j;
}

Vec2 NoiseField::self_advection(const Vec2& x) const {
  const Vec2 s = (*this)(x);
  const Jacobian j = jacobian(x);
  return {j[0][0] * s[0] + j[0][1] * s[1], j[1][0] * s[0] + j[1][1] * s[1]};
}

NoiseModel NoiseModel::build(const std::vector<NoiseField>& fields) {
  NoiseModel model;
  model.fields_ = fields;
  for (const auto& f : fields) {
    for (const auto& c : f.components) {
      if (c.m[0] == 0 && c.m[1] == 0) throw ConfigError("noise wavenumber m must be nonzero");
      if (std::abs(c.coefficient[0] * c.m[0] + c.coefficient[1] * c.m[1]) >
          1e-14 * std::hypot(c.coefficient[0], c.coefficient[1]) * std::hypot(c.m[0], c.m[1])) {
        throw ConfigError("noise coefficient must be orthogonal to its wavenumber (div sigma = 0)");
      }
      model.max_wavenumber_ = std::max({model.max_wavenumber_, std::abs(c.m[0]), std::abs(c.m[1])});
    }
  }
  const GridSpec probe(256);
  for (const auto& f : fields) {
    double peak = 0.0;
    for (int i1 = 0; i1 < probe.size(); ++i1) {
      for (int i2 = 0; i2 < probe.size(); ++i2) {
        const Vec2 s = f({probe.coord(i1), probe.coord(i2)});
        peak = std::max(peak, s[0] * s[0] + s[1] * s[1]);
      }
    }
    model.sum_sigma_sq_ += peak;
  }
  return model;
}

NoiseModel NoiseModel::from_modes(const std::vector<NoiseMode>& modes) {
  std::map<std::tuple<int, int, int>, int> seen;
  std::vector<NoiseField> fields;
  for (const auto& mode : modes) {
    if (mode.m[0] == 0 && mode.m[1] == 0) throw ConfigError("noise wavenumber m must be nonzero");
    if (!(mode.amplitude > 0.0)) throw ConfigError("noise amplitude must be positive");
    const auto key = std::make_tuple(mode.m[0], mode.m[1], static_cast<int>(mode.phase));
    if (seen[key]++ > 0) {
      std::ostringstream msg;
      msg << "duplicate noise mode m=(" << mode.m[0] << "," << mode.m[1] << ") "
          << (mode.phase == Phase::cos ? "cos" : "sin");
      throw ConfigError(msg.str());
    }
    fields.push_back(mode_field(mode));
  }
  return build(fields);
}

NoiseModel NoiseModel::single(double amplitude, std::array<int, 2> m, Phase phase) {
  return from_modes({NoiseMode{m, phase, amplitude}});
}

NoiseModel NoiseModel::constant(const Vec2& c) { return build({NoiseField{{}, c}}); }

NoiseModel NoiseModel::sheared(double amplitude) {
  if (!(amplitude > 0.0)) throw ConfigError("noise amplitude must be positive");
  return build({NoiseField{{TrigComponent{{0, 1}, Phase::sin, {amplitude, 0.0}}}, {0.0, 0.0}}});
}

NoiseModel NoiseModel::composite(double amplitude) {
  if (!(amplitude > 0.0)) throw ConfigError("noise amplitude must be positive");
  return build({NoiseField{{TrigComponent{{0, 1}, Phase::cos, {-amplitude, 0.0}},
                            TrigComponent{{1, 0}, Phase::cos, {0.0, amplitude}}},
                           {0.0, 0.0}}});
}

NoiseModel NoiseModel::isotropic_shell(int radius, double amplitude) {
  if (radius < 1) throw ConfigError("isotropic shell radius must be >= 1");
  std::vector<NoiseMode> modes;
  for (int m1 = -radius - 1; m1 <= radius + 1; ++m1) {
    for (int m2 = -radius - 1; m2 <= radius + 1; ++m2) {
      if (std::lround(std::hypot(m1, m2)) != radius) continue;
      // Keep one representative of each +-m pair.
      if (m1 < 0 || (m1 == 0 && m2 < 0)) continue;
      modes.push_back({{m1, m2}, Phase::cos, amplitude});
      modes.push_back({{m1, m2}, Phase::sin, amplitude});
    }
  }
  return from_modes(modes);
}

NoiseModel NoiseModel::from_spec(const NoiseSpec& spec) {
  if (spec.preset == "off") return off();
  if (spec.preset == "single") return single(spec.amplitude);
  if (spec.preset == "constant") return constant(spec.constant);
  if (spec.preset == "sheared") return sheared(spec.amplitude);
  if (spec.preset == "composite") return composite(spec.amplitude);
  if (spec.preset == "isotropic-shell") return isotropic_shell(spec.shell_radius, spec.amplitude);
  if (spec.preset == "modes") return from_modes(spec.modes);
  throw ConfigError("unknown noise preset: " + spec.preset);
}

Vec2 NoiseModel::self_advection(const Vec2& x) const {
  Vec2 out{0.0, 0.0};
  for (const auto& f : fields_) {
    const Vec2 c = f.self_advection(x);
    out[0] += c[0];
    out[1] += c[1];
  }
  return out;
}

NoiseGridFields NoiseModel::on_grid(const GridSpec& grid) const {
  if (2 * max_wavenumber_ > grid.half() - 1) {
    throw ConfigError("grid too coarse to resolve sigma . grad sigma for this noise model");
  }
  NoiseGridFields out{{},
                      {SpectralField::zeros(grid), SpectralField::zeros(grid), true},
                      SpectralField::zeros(grid),
                      SpectralField::zeros(grid),
                      SpectralField::zeros(grid)};
  for (const auto& f : fields_) {
    auto component = [&](int a) {
      return SpectralField::from_function(grid, [&f, a](double x1, double x2) { return f({x1, x2})[a]; });
    };
    VectorField sigma{component(0), component(1), true};
    if (divergence_defect(sigma) > 1e-12) {
      throw NumericalError("noise field is not divergence-free on the grid");
    }
    const VectorField g1 = gradient(sigma.u1);
    const VectorField g2 = gradient(sigma.u2);
    const SpectralField adv1 =
        pointwise_product(sigma.u1, g1.u1) + pointwise_product(sigma.u2, g1.u2);
    const SpectralField adv2 =
        pointwise_product(sigma.u1, g2.u1) + pointwise_product(sigma.u2, g2.u2);
    out.self_advection.u1 = out.self_advection.u1 + adv1;
    out.self_advection.u2 = out.self_advection.u2 + adv2;
    out.d11 = out.d11 + pointwise_product(sigma.u1, sigma.u1);
    out.d12 = out.d12 + pointwise_product(sigma.u1, sigma.u2);
    out.d22 = out.d22 + pointwise_product(sigma.u2, sigma.u2);
    out.sigma.push_back(std::move(sigma));
  }
  return out;
}

std::string NoiseModel::budget_warning(std::optional<double> c_nu) const {
  if (!c_nu || sum_sigma_sq_ < *c_nu) return {};
  std::ostringstream msg;
  msg << "noise budget: sum_k ||sigma_k sigma_k^T||_inf = " << sum_sigma_sq_
      << " is not below C_nu = " << *c_nu;
  return msg.str();
}

ItoStratonovichDrift ito_stratonovich_drift(const NoiseModel& model, const GridSpec& grid) {
  NoiseGridFields g = model.on_grid(grid);
  return {std::move(g.self_advection), std::move(g.d11), std::move(g.d12), std::move(g.d22)};
}

}  // namespace vortex
