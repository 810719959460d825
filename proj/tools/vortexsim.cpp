// vortexsim: command-line entry point for the particle / SPDE harness.
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "vortex/harness/experiment.hpp"
#include "vortex/harness/oracles.hpp"
#include "vortex/harness/report.hpp"
#include "vortex/snapshot.hpp"

namespace {

using namespace vortex;
using namespace vortex::harness;

constexpr int kPass = 0;
constexpr int kUsage = 1;
constexpr int kFail = 2;

struct Overrides {
  std::optional<unsigned long long> seed;
  std::optional<int> paths;
  std::optional<std::string> out;
};

ExperimentConfig load_with_overrides(const std::string& path, const Overrides& o) {
  ExperimentConfig cfg = load_config(path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.paths) cfg.paths = *o.paths;
  if (o.out) cfg.output = *o.out;
  return cfg;
}

void report_warnings(const Validation& v) {
  for (const auto& w : v.warnings) spdlog::warn("{}", w);
}

int cmd_validate(const std::string& path, const Overrides& o) {
  const ExperimentConfig cfg = load_with_overrides(path, o);
  const Validation v = validate_config(cfg);
  fmt::print("config {} (hash {})\n", path, config_hash(cfg));
  fmt::print("beta bound 1/(4 + 2 alpha - 4/p) = {:.6g}, beta = {}\n", v.beta_bound, cfg.beta);
  for (const auto& w : v.warnings) fmt::print("warning: {}\n", w);
  for (const auto& e : v.errors) fmt::print("error: {}\n", e);
  fmt::print("{}\n", v.ok() ? "valid" : "invalid");
  return v.ok() ? kPass : kUsage;
}

int cmd_simulate(const std::string& path, const Overrides& o) {
  const Experiment ex = prepare(load_with_overrides(path, o));
  report_warnings(ex.validation);
  const auto& cfg = ex.cfg;
  std::filesystem::create_directories(cfg.output);
  bool ok = true;
  for (std::size_t n : cfg.ladder) {
    for (int p = 0; p < cfg.paths; ++p) {
      const auto pi = static_cast<std::uint32_t>(p);
      const bool empty = !(ex.data.gamma_plus() > 0.0);
      const ParticleEnsemble e0 =
          empty ? uniform_ensemble(n, cfg.seed, pi) : sample_initial_positions(ex.data, n, cfg.seed, pi);
      const NoisePath noise = generate_path(ex.noise.size(), n, cfg.dt, cfg.n_steps(), cfg.seed, pi);
      const Mollifier m(cfg.beta, static_cast<double>(n));
      StepConfig step;
      step.dt = cfg.dt;
      step.scheme = cfg.particle_scheme;
      step.interaction = empty ? InteractionMode::none : cfg.interaction;
      step.nu = cfg.nu;
      step.truncation = Truncation{ex.truncation};
      step.cross_check = cfg.cross_check;
      const InteractionEngine engine(ex.grid, m, step.interaction, step.truncation);
      const ParticleRun run = run_particles(e0, noise, step, ex.noise, engine, m, ex.grid,
                                            cfg.observation_steps(), cfg.write_particles);
      std::ofstream masses(cfg.output / fmt::format("masses_N{}_path{}.csv", n, p));
      masses << "t,mass_plus,mass_minus\n";
      for (std::size_t i = 0; i < run.times.size(); ++i) {
        const double mp = run.g_plus[i].integral();
        const double mm = run.g_minus[i].integral();
        masses << fmt::format("{:.17g},{:.17g},{:.17g}\n", run.times[i], mp, mm);
        auto rel = [](double got, double want) { return want > 0 ? std::abs(got / want - 1.0) : std::abs(got); };
        if (rel(mp, ex.data.gamma_plus()) > 1e-6 || rel(mm, ex.data.gamma_minus()) > 1e-6) ok = false;
        if (cfg.write_snapshots) {
          write_snapshot(cfg.output / fmt::format("g_N{}_path{}_{:03d}.vxf", n, p, i), run.g(i), run.times[i]);
        }
      }
      if (cfg.write_particles) {
        write_particle_csv(cfg.output / fmt::format("particles_N{}_path{}.csv", n, p), run.times, run.snapshots);
      }
      spdlog::info("N={} path={} done", n, p);
    }
  }
  fmt::print("{}: species masses {} to 1e-6\n", ok ? "PASS" : "FAIL", ok ? "conserved" : "NOT conserved");
  return ok ? kPass : kFail;
}

int cmd_solve(const std::string& path, const Overrides& o) {
  const Experiment ex = prepare(load_with_overrides(path, o));
  report_warnings(ex.validation);
  const auto& cfg = ex.cfg;
  std::filesystem::create_directories(cfg.output);
  SpdeConfig sc;
  sc.grid = ex.grid;
  sc.nu = cfg.nu;
  sc.dt = cfg.dt;
  sc.form = cfg.form;
  sc.variant = cfg.variant;
  sc.hessian = cfg.hessian;
  sc.truncation = Truncation{ex.truncation};
  const SpdeSolver solver(sc, ex.noise);
  bool ok = true;
  for (int p = 0; p < cfg.paths; ++p) {
    const NoisePath noise =
        generate_path(ex.noise.size(), 0, cfg.dt, cfg.n_steps(), cfg.seed, static_cast<std::uint32_t>(p));
    std::vector<SpectralField> init = sc.coupled()
                                          ? std::vector<SpectralField>{ex.data.plus_on(ex.grid), ex.data.minus_on(ex.grid)}
                                          : std::vector<SpectralField>{ex.data.omega_on(ex.grid)};
    std::ofstream diag(cfg.output / fmt::format("spde_path{}_diagnostics.csv", p));
    const SpdeTrajectory traj =
        solver.solve(solver.initial_state(std::move(init)), noise, cfg.observation_steps(), false, &diag);
    const double w0 = traj.max_omega.front();
    double worst = 0.0;
    for (double m : traj.max_omega) worst = std::max(worst, m);
    if (worst > 1.05 * w0) ok = false;
    spdlog::info("path {}: max_t ||omega||_inf = {:.6g}, ||omega0||_inf = {:.6g}", p, worst, w0);
    if (cfg.write_snapshots) {
      for (std::size_t i = 0; i < traj.states.size(); ++i) {
        write_snapshot(cfg.output / fmt::format("omega_path{}_{:03d}.vxf", p, i), traj.states[i].vorticity(),
                       traj.times[i]);
      }
    }
  }
  fmt::print("{}: ||omega(t)||_inf <= 1.05 ||omega0||_inf\n", ok ? "PASS" : "FAIL");
  return ok ? kPass : kFail;
}

int cmd_converge(const std::string& path, const Overrides& o) {
  const Experiment ex = prepare(load_with_overrides(path, o));
  report_warnings(ex.validation);
  const StudyResult study = convergence_study(ex);
  write_study(ex, study);
  for (std::size_t i = 0; i < ex.cfg.ladder.size(); ++i) {
    spdlog::info("N={:>6}  median sup_t err_sup={:.4e}  err_Hetap={:.4e}  err_Hneg={:.4e}",
                 ex.cfg.ladder[i], study.sup.median[i], study.hetap.median[i], study.hneg.median[i]);
  }
  fmt::print("{}: {}\n", study.pass ? "PASS" : "FAIL", study.verdict_detail);
  fmt::print("results in {}\n", ex.cfg.output.string());
  return study.pass ? kPass : kFail;
}

int cmd_oracle(const std::string& name, const Overrides& o) {
  const auto results = run_oracle(name, o.seed.value_or(1));
  bool ok = true;
  for (const auto& r : results) {
    fmt::print("{}: {} value={:.3e} tolerance={:.1e} ({})\n", r.pass ? "PASS" : "FAIL", r.name, r.value,
               r.tolerance, r.detail);
    ok = ok && r.pass;
  }
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic point-vortex particles vs. the transport-noise vorticity SPDE"};
  app.require_subcommand(1);
  Overrides o;
  bool quiet = false;
  bool verbose = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "master seed override");
    sub->add_option("--paths", o.paths, "Monte-Carlo path count override")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "output directory override");
    sub->add_flag("--quiet,-q", quiet, "errors only");
    sub->add_flag("--verbose,-v", verbose, "debug logging");
  };
  std::string target;
  auto* validate = app.add_subcommand("validate", "check a config against the assumptions");
  auto* simulate = app.add_subcommand("simulate-particles", "run the particle system, write fields and masses");
  auto* solve = app.add_subcommand("solve-spde", "run the SPDE solver, write diagnostics");
  auto* converge = app.add_subcommand("converge", "particle vs SPDE convergence study");
  for (auto* sub : {validate, simulate, solve, converge}) {
    sub->add_option("config", target, "YAML config")->required()->check(CLI::ExistingFile);
    add_common(sub);
  }
  auto* oracle = app.add_subcommand("oracle", "run a named analytic oracle (or 'all')");
  oracle->add_option("name", target, "oracle name")->required();
  add_common(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  spdlog::set_level(quiet ? spdlog::level::err : verbose ? spdlog::level::debug : spdlog::level::info);
  try {
    if (*validate) return cmd_validate(target, o);
    if (*simulate) return cmd_simulate(target, o);
    if (*solve) return cmd_solve(target, o);
    if (*converge) return cmd_converge(target, o);
    if (*oracle) return cmd_oracle(target, o);
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const NumericalError& e) {
    spdlog::error("numerical failure: {}", e.what());
    fmt::print("FAIL: {}\n", e.what());
    return kFail;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  }
  return kUsage;
}
