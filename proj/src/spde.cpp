#include "vortex/spde.hpp"

#include <cmath>

#include <fmt/format.h>

#include "vortex/biot_savart.hpp"
#include "vortex/spectral_ops.hpp"

namespace vortex {

namespace {

SpectralField product(const SpectralField& a, const SpectralField& b) { return pointwise_product(a, b); }

bool all_finite(const SpectralField& f) {
  for (double v : f.values()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double max_speed(const VectorField& u) {
  double m = 0.0;
  for (std::size_t i = 0; i < u.u1.values().size(); ++i) {
    m = std::max(m, std::hypot(u.u1.values()[i], u.u2.values()[i]));
  }
  return m;
}

}  // namespace

SpdeSolver::SpdeSolver(SpdeConfig config, NoiseModel noise)
    : config_(std::move(config)), noise_(std::move(noise)) {
  if (!(config_.dt > 0.0)) throw ConfigError("spde dt must be positive");
  if (!(config_.nu >= 0.0)) throw ConfigError("spde viscosity must be nonnegative");
  if (!(config_.truncation.cap > 0.0)) throw ConfigError("truncation cap M must be positive");
  if (!noise_.is_off()) grid_noise_ = noise_.on_grid(config_.grid);
  const GridSpec& g = config_.grid;
  decay_.resize(g.spectral_points());
  for (int i1 = 0; i1 < g.size(); ++i1) {
    const int k1 = g.wavenumber(i1);
    for (int i2 = 0; i2 < g.half(); ++i2) {
      const int k2 = g.half_wavenumber(i2);
      decay_[g.spectral_index(i1, i2)] =
          std::exp(-config_.nu * static_cast<double>(k1 * k1 + k2 * k2) * config_.dt);
    }
  }
}

SpdeState SpdeSolver::initial_state(std::vector<SpectralField> fields) const {
  const std::size_t expected = config_.coupled() ? 2 : 1;
  if (fields.size() != expected) {
    throw ConfigError(fmt::format("this spde variant takes {} initial field(s)", expected));
  }
  for (const auto& f : fields) {
    if (!(f.grid() == config_.grid)) throw ConfigError("initial field is on a different grid");
  }
  if (!config_.coupled()) {
    const SpectralField& w = fields[0];
    if (std::abs(w.coeffs()[0]) > 1e-12 * std::max(1.0, w.max_abs_coeff())) {
      throw ConfigError("single-variant initial vorticity must have zero mean");
    }
  }
  return finish(std::move(fields));
}

SpdeState SpdeSolver::finish(std::vector<SpectralField> fields) const {
  SpdeState out;
  for (auto& f : fields) {
    SpectralField d = dealias(f);
    if (!config_.coupled()) d = d.with_zero_mean();
    out.fields.push_back(std::move(d));
  }
  return out;
}

VectorField SpdeSolver::transport_velocity(const SpdeState& state) const {
  VectorField u = velocity_from_vorticity_unchecked(state.vorticity());
  if (!config_.truncated()) return u;
  auto clamp_field = [this](const SpectralField& f) {
    std::vector<double> v(f.values().begin(), f.values().end());
    const double m = config_.truncation.cap;
    for (double& x : v) x = std::clamp(x, -m, m);
    return SpectralField::from_values(f.grid(), std::move(v));
  };
  return VectorField{clamp_field(u.u1), clamp_field(u.u2), false};
}

SpectralField SpdeSolver::transport_term(const VectorField& velocity, const SpectralField& w) const {
  // Conservative form div(A w); equal to A.grad w when div A = 0, and
  // mass-conserving when the clamp makes A compressible.
  const SpectralField flux = derivative(product(velocity.u1, w), 1, 0) +
                             derivative(product(velocity.u2, w), 0, 1);
  return dealias(flux) * -1.0;
}

SpectralField SpdeSolver::ito_correction(const SpectralField& w) const {
  if (!grid_noise_) return SpectralField::zeros(config_.grid);
  const NoiseGridFields& n = *grid_noise_;
  const VectorField gw = gradient(w);
  if (config_.hessian == HessianForm::divergence) {
    const SpectralField f1 = product(n.d11, gw.u1) + product(n.d12, gw.u2);
    const SpectralField f2 = product(n.d12, gw.u1) + product(n.d22, gw.u2);
    return dealias(derivative(f1, 1, 0) + derivative(f2, 0, 1)) * 0.5;
  }
  const SpectralField drift = product(n.self_advection.u1, gw.u1) + product(n.self_advection.u2, gw.u2);
  const SpectralField hess = product(n.d11, derivative(w, 2, 0)) +
                             product(n.d12, derivative(w, 1, 1)) * 2.0 +
                             product(n.d22, derivative(w, 0, 2));
  return dealias(drift + hess) * 0.5;
}

SpectralField SpdeSolver::noise_term(std::size_t k, const SpectralField& w) const {
  const VectorField& sigma = grid_noise_->sigma.at(k);
  const VectorField gw = gradient(w);
  return dealias(product(sigma.u1, gw.u1) + product(sigma.u2, gw.u2)) * -1.0;
}

std::vector<SpectralField> SpdeSolver::drift_rhs(const SpdeState& state) const {
  const VectorField u = transport_velocity(state);
  std::vector<SpectralField> out;
  for (const auto& w : state.fields) {
    out.push_back(laplacian(w) * config_.nu + transport_term(u, w) + ito_correction(w));
  }
  return out;
}

void SpdeSolver::check_cfl(const VectorField& velocity, int s) const {
  const double speed = max_speed(velocity);
  const double cfl = config_.dt * speed * config_.grid.size() / kTwoPi;
  if (cfl > config_.cfl_limit) {
    throw NumericalError(fmt::format(
        "advective CFL number {:.3f} exceeds {:.2f} at step {} (max|u| = {:.3e}); reduce dt", cfl,
        config_.cfl_limit, s, speed));
  }
}

std::vector<SpectralField> SpdeSolver::nondiffusive_drift(const SpdeState& state,
                                                          bool with_correction, int s) const {
  const VectorField u = transport_velocity(state);
  check_cfl(u, s);
  std::vector<SpectralField> out;
  for (const auto& w : state.fields) {
    SpectralField d = transport_term(u, w);
    if (with_correction && grid_noise_) d = d + ito_correction(w);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<SpectralField> SpdeSolver::noise_increment(const SpdeState& state,
                                                       const NoisePath& path, int s) const {
  std::vector<SpectralField> out;
  for (const auto& w : state.fields) {
    SpectralField acc = SpectralField::zeros(config_.grid);
    for (std::size_t k = 0; k < noise_.size(); ++k) acc = acc + noise_term(k, w) * path.dw(s, k);
    out.push_back(std::move(acc));
  }
  return out;
}

SpectralField SpdeSolver::integrating_factor(const SpectralField& f) const {
  std::vector<Complex> c(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= decay_[i];
  return SpectralField::from_coeffs(f.grid(), std::move(c));
}

void SpdeSolver::check_inputs(const SpdeState& state, const NoisePath& path, int s) const {
  if (std::abs(path.dt - config_.dt) > 1e-12 * config_.dt) {
    throw ConfigError("noise path dt does not match the spde dt");
  }
  if (s < 0 || s >= path.n_steps) throw ConfigError("step index outside the noise path");
  if (path.modes != noise_.size()) throw ConfigError("noise path and noise model disagree on the mode count");
  if (state.fields.size() != (config_.coupled() ? 2u : 1u)) throw ConfigError("state does not match the spde variant");
}

SpdeState SpdeSolver::step_ito(const SpdeState& state, const NoisePath& path, int s) const {
  check_inputs(state, path, s);
  const auto drift = nondiffusive_drift(state, true, s);
  std::vector<SpectralField> next;
  if (noise_.is_off()) {
    for (std::size_t i = 0; i < state.fields.size(); ++i) {
      next.push_back(integrating_factor(state.fields[i] + drift[i] * config_.dt));
    }
  } else {
    const auto noise = noise_increment(state, path, s);
    for (std::size_t i = 0; i < state.fields.size(); ++i) {
      next.push_back(integrating_factor(state.fields[i] + drift[i] * config_.dt + noise[i]));
    }
  }
  for (const auto& f : next) {
    if (!all_finite(f)) throw NumericalError(fmt::format("non-finite vorticity at step {}", s));
  }
  return finish(std::move(next));
}

SpdeState SpdeSolver::step_stratonovich(const SpdeState& state, const NoisePath& path, int s) const {
  check_inputs(state, path, s);
  const auto drift = nondiffusive_drift(state, false, s);
  std::vector<SpectralField> deterministic;
  for (std::size_t i = 0; i < state.fields.size(); ++i) {
    deterministic.push_back(state.fields[i] + drift[i] * config_.dt);
  }
  std::vector<SpectralField> next;
  if (noise_.is_off()) {
    for (const auto& d : deterministic) next.push_back(integrating_factor(d));
  } else {
    const auto noise = noise_increment(state, path, s);
    std::vector<SpectralField> predictor;
    for (std::size_t i = 0; i < state.fields.size(); ++i) {
      predictor.push_back(dealias(integrating_factor(deterministic[i] + noise[i])));
    }
    const auto noise_pred = noise_increment(SpdeState{predictor}, path, s);
    for (std::size_t i = 0; i < state.fields.size(); ++i) {
      next.push_back(integrating_factor(deterministic[i] + noise[i] * 0.5) + noise_pred[i] * 0.5);
    }
  }
  for (const auto& f : next) {
    if (!all_finite(f)) throw NumericalError(fmt::format("non-finite vorticity at step {}", s));
  }
  return finish(std::move(next));
}

SpdeState SpdeSolver::step(const SpdeState& state, const NoisePath& path, int s) const {
  return config_.form == SpdeForm::ito ? step_ito(state, path, s) : step_stratonovich(state, path, s);
}

SpdeDiagnostics SpdeSolver::diagnostics(const SpdeState& state, int step) const {
  SpdeDiagnostics d;
  d.step = step;
  d.t = step * config_.dt;
  const SpectralField w = state.vorticity();
  d.enstrophy = inner_product(w, w);
  const VectorField u = velocity_from_vorticity_unchecked(w);
  d.energy = 0.5 * (inner_product(u.u1, u.u1) + inner_product(u.u2, u.u2));
  d.mass_plus = state.fields[0].integral();
  d.mass_minus = state.fields.size() > 1 ? state.fields[1].integral() : 0.0;
  d.max_u = max_speed(u);
  d.max_omega = w.max_abs();
  return d;
}

void write_diagnostics_header(std::ostream& out) {
  out << "step,t,enstrophy,energy,mass_plus,mass_minus,max_u,max_omega\n";
}

void write_diagnostics_row(std::ostream& out, const SpdeDiagnostics& d) {
  out << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", d.step, d.t,
                     d.enstrophy, d.energy, d.mass_plus, d.mass_minus, d.max_u, d.max_omega);
}

SpdeTrajectory SpdeSolver::solve(const SpdeState& initial, const NoisePath& path,
                                 const std::vector<int>& observation_steps, bool dense,
                                 std::ostream* diagnostics_csv) const {
  if (!std::is_sorted(observation_steps.begin(), observation_steps.end())) {
    throw ConfigError("observation steps must be ascending");
  }
  const int last = observation_steps.empty() ? 0 : observation_steps.back();
  if (last > path.n_steps) throw ConfigError("observation time beyond the noise path");
  SpdeTrajectory traj;
  traj.dense = dense;
  SpdeState state = initial;
  std::size_t next_obs = 0;
  auto observe = [&](int s) {
    traj.max_omega.push_back(state.vorticity().max_abs());
    if (diagnostics_csv) write_diagnostics_row(*diagnostics_csv, diagnostics(state, s));
    bool stored = false;
    while (next_obs < observation_steps.size() && observation_steps[next_obs] == s) {
      ++next_obs;
      stored = true;
    }
    if (stored || dense) {
      traj.steps.push_back(s);
      traj.times.push_back(s * config_.dt);
      traj.states.push_back(state);
    }
  };
  if (diagnostics_csv) write_diagnostics_header(*diagnostics_csv);
  observe(0);
  for (int s = 0; s < last; ++s) {
    state = step(state, path, s);
    observe(s + 1);
  }
  return traj;
}

}  // namespace vortex
