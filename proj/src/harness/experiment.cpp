#include "vortex/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>

#include <fmt/format.h>
#include <omp.h>
#include <spdlog/spdlog.h>

#include "vortex/snapshot.hpp"
#include "vortex/spectral_ops.hpp"

namespace vortex::harness {

namespace {

InitialVorticity make_initial(const ExperimentConfig& cfg) {
  if (cfg.initial == "snapshot") return initial_from_field(read_snapshot(*cfg.initial_snapshot).field);
  return initial_preset(cfg.initial);
}

SpdeConfig spde_config(const Experiment& ex) {
  SpdeConfig c;
  c.grid = ex.grid;
  c.nu = ex.cfg.nu;
  c.dt = ex.cfg.dt;
  c.form = ex.cfg.form;
  c.variant = ex.cfg.variant;
  c.hessian = ex.cfg.hessian;
  c.truncation = Truncation{ex.truncation};
  return c;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

MetricSummary summarize_metric(const Experiment& ex, const std::vector<RunResult>& runs,
                               double ErrorRow::*metric) {
  MetricSummary s;
  const auto& ladder = ex.cfg.ladder;
  for (std::size_t li = 0; li < ladder.size(); ++li) {
    std::vector<double> sups;
    for (const auto& r : runs) {
      if (r.n != ladder[li] || r.failed) continue;
      double m = 0.0;
      for (const auto& row : r.rows) m = std::max(m, row.*metric);
      sups.push_back(m);
    }
    s.median.push_back(quantile(sups, 0.5));
    s.q25.push_back(quantile(sups, 0.25));
    s.q75.push_back(quantile(sups, 0.75));
  }
  s.strictly_decreasing = true;
  for (std::size_t i = 1; i < s.median.size(); ++i) {
    s.slopes.push_back(std::log(s.median[i] / s.median[i - 1]) /
                       std::log(static_cast<double>(ladder[i]) / static_cast<double>(ladder[i - 1])));
    if (!(s.median[i] < s.median[i - 1])) s.strictly_decreasing = false;
  }
  if (ladder.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(ladder.size());
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      const double x = std::log(static_cast<double>(ladder[i]));
      const double y = std::log(s.median[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    s.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return s;
}

}  // namespace

int worker_count() {
  int cap = omp_get_max_threads();
  if (const char* env = std::getenv("VORTEX_MAX_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) cap = std::min(cap, v);
  }
  return std::max(cap, 1);
}

Experiment prepare(const ExperimentConfig& cfg) {
  Experiment ex;
  ex.cfg = cfg;
  ex.validation = validate_config(cfg);
  if (!ex.validation.ok()) {
    std::string msg = "invalid config:";
    for (const auto& e : ex.validation.errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  ex.grid = GridSpec(cfg.grid);
  ex.data = SignedInitialData::build(make_initial(cfg));
  ex.noise = NoiseModel::from_spec(cfg.noise);
  ex.truncation = cfg.truncation ? *cfg.truncation : 2.0 * kernel_l1_proxy() * ex.data.sup_norm();
  if (!(ex.truncation > 0.0)) ex.truncation = 1.0;  // omega0 = 0: the clamp is irrelevant
  ex.hash = config_hash(cfg);
  return ex;
}

SpdeTrajectory reference_solution(const Experiment& ex, int path) {
  const SpdeSolver solver(spde_config(ex), ex.noise);
  const NoisePath noise = generate_path(ex.noise.size(), 0, ex.cfg.dt, ex.cfg.n_steps(), ex.cfg.seed,
                                        static_cast<std::uint32_t>(path));
  std::vector<SpectralField> init;
  if (solver.config().coupled()) {
    init = {ex.data.plus_on(ex.grid), ex.data.minus_on(ex.grid)};
  } else {
    init = {ex.data.omega_on(ex.grid)};
  }
  return solver.solve(solver.initial_state(std::move(init)), noise, ex.cfg.observation_steps());
}

RunResult coupled_run(const Experiment& ex, std::size_t n, int path, const SpdeTrajectory* reference) {
  RunResult result;
  result.n = n;
  result.path = path;
  const auto start = std::chrono::steady_clock::now();
  try {
    SpdeTrajectory local;
    if (!reference) {
      local = reference_solution(ex, path);
      reference = &local;
    }
    const auto& cfg = ex.cfg;
    const auto p = static_cast<std::uint32_t>(path);
    const bool empty = !(ex.data.gamma_plus() > 0.0);
    const ParticleEnsemble initial =
        empty ? uniform_ensemble(n, cfg.seed, p) : sample_initial_positions(ex.data, n, cfg.seed, p);
    const NoisePath noise = generate_path(ex.noise.size(), n, cfg.dt, cfg.n_steps(), cfg.seed, p);
    const Mollifier mollifier(cfg.beta, static_cast<double>(n));
    StepConfig step;
    step.dt = cfg.dt;
    step.scheme = cfg.particle_scheme;
    step.interaction = empty ? InteractionMode::none : cfg.interaction;
    step.nu = cfg.nu;
    step.truncation = Truncation{ex.truncation};
    step.cross_check = cfg.cross_check;
    const InteractionEngine engine(ex.grid, mollifier, step.interaction, step.truncation);
    const ParticleRun run = run_particles(initial, noise, step, ex.noise, engine, mollifier, ex.grid,
                                          cfg.observation_steps(), cfg.write_particles);
    result.cross_check = run.cross_check_discrepancy;
    if (run.times.size() != reference->states.size()) {
      throw NumericalError("particle and spde observation grids differ");
    }
    for (std::size_t i = 0; i < run.times.size(); ++i) {
      const SpdeState& ref = reference->states[i];
      const SpectralField omega = ref.vorticity();
      const SpectralField diff = run.g(i) - omega;
      ErrorRow row;
      row.n = n;
      row.path = path;
      row.t = run.times[i];
      row.err_sup = diff.max_abs();
      row.err_hetap = sobolev_norm(diff, cfg.eta, cfg.p);
      row.err_hneg = sobolev_norm(diff, -1.0 + cfg.epsilon, 2.0);
      row.mass_plus = run.g_plus[i].integral();
      row.mass_minus = run.g_minus[i].integral();
      if (ref.fields.size() == 2) {
        row.err_sup_plus = (run.g_plus[i] - ref.fields[0]).max_abs();
        row.err_sup_minus = (run.g_minus[i] - ref.fields[1]).max_abs();
      } else {
        auto part = [&omega](double sign) {
          std::vector<double> v(omega.values().begin(), omega.values().end());
          for (double& x : v) x = std::max(sign * x, 0.0);
          return SpectralField::from_values(omega.grid(), std::move(v));
        };
        row.err_sup_plus = (run.g_plus[i] - part(1.0)).max_abs();
        row.err_sup_minus = (run.g_minus[i] - part(-1.0)).max_abs();
      }
      result.rows.push_back(row);
    }
    if (cfg.write_particles && !run.snapshots.empty()) {
      std::filesystem::create_directories(cfg.output);
      write_particle_csv(cfg.output / fmt::format("particles_N{}_path{}.csv", n, path), run.times,
                         run.snapshots);
    }
    if (cfg.write_snapshots && path == 0 && !run.times.empty()) {
      std::filesystem::create_directories(cfg.output);
      write_snapshot(cfg.output / fmt::format("g_N{}_path0_final.vxf", n), run.g(run.times.size() - 1),
                     run.times.back());
    }
  } catch (const std::exception& e) {
    result.failed = true;
    result.message = e.what();
    result.rows.clear();
    spdlog::error("run N={} path={} failed: {}", n, path, e.what());
  }
  result.wallclock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

StudyResult summarize(const Experiment& ex, std::vector<RunResult> runs) {
  StudyResult study;
  study.runs = std::move(runs);
  for (const auto& r : study.runs) study.failures += r.failed ? 1 : 0;
  study.sup = summarize_metric(ex, study.runs, &ErrorRow::err_sup);
  study.hetap = summarize_metric(ex, study.runs, &ErrorRow::err_hetap);
  study.hneg = summarize_metric(ex, study.runs, &ErrorRow::err_hneg);
  const double final_sup = study.sup.median.empty() ? 0.0 : study.sup.median.back();
  const bool below = final_sup < ex.cfg.threshold;
  study.pass = study.failures == 0 && study.sup.strictly_decreasing && below;
  study.verdict_detail = fmt::format(
      "failures={} sup_medians_strictly_decreasing={} final_sup_median={:.6g} threshold={:.6g} "
      "(artifact default threshold)",
      study.failures, study.sup.strictly_decreasing, final_sup, ex.cfg.threshold);
  return study;
}

StudyResult convergence_study(const Experiment& ex) {
  const auto& ladder = ex.cfg.ladder;
  const int paths = ex.cfg.paths;
  std::vector<RunResult> runs(ladder.size() * static_cast<std::size_t>(paths));
  if (ex.cfg.write_snapshots) std::filesystem::create_directories(ex.cfg.output);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (int path = 0; path < paths; ++path) {
    SpdeTrajectory reference;
    std::string failure;
    try {
      reference = reference_solution(ex, path);
      if (ex.cfg.write_snapshots && path == 0 && !reference.states.empty()) {
        write_snapshot(ex.cfg.output / "omega_path0_final.vxf", reference.states.back().vorticity(),
                       reference.times.back());
      }
    } catch (const std::exception& e) {
      failure = std::string("spde reference failed: ") + e.what();
    }
    for (std::size_t li = 0; li < ladder.size(); ++li) {
      RunResult& slot = runs[li * static_cast<std::size_t>(paths) + static_cast<std::size_t>(path)];
      if (!failure.empty()) {
        slot.n = ladder[li];
        slot.path = path;
        slot.failed = true;
        slot.message = failure;
        continue;
      }
      slot = coupled_run(ex, ladder[li], path, &reference);
      spdlog::debug("N={} path={} done in {:.2f}s", ladder[li], path, slot.wallclock_s);
    }
  }
  return summarize(ex, std::move(runs));
}

}  // namespace vortex::harness
