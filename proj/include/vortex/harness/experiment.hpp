#pragma once

#include <string>
#include <vector>

#include "vortex/harness/config.hpp"
#include "vortex/initial_data.hpp"

namespace vortex::harness {

/// A validated config with everything derived from it.
struct Experiment {
  ExperimentConfig cfg;
  Validation validation;
  GridSpec grid{8};
  SignedInitialData data;
  NoiseModel noise;
  double truncation = 0.0;  // M
  std::string hash;
};

/// Throws ConfigError listing every validation error.
Experiment prepare(const ExperimentConfig& cfg);

struct ErrorRow {
  std::size_t n = 0;
  int path = 0;
  double t = 0.0;
  double err_sup = 0.0;    // ||g^N - omega||_C
  double err_hetap = 0.0;  // ||g^N - omega||_{H^eta_p}
  double err_hneg = 0.0;   // ||g^N - omega||_{H^{-1+eps}_2}
  double mass_plus = 0.0;
  double mass_minus = 0.0;
  double err_sup_plus = 0.0;
  double err_sup_minus = 0.0;
};

struct RunResult {
  std::size_t n = 0;
  int path = 0;
  std::vector<ErrorRow> rows;
  double wallclock_s = 0.0;
  double cross_check = -1.0;
  bool failed = false;
  std::string message;
};

/// The SPDE reference for one path (its common increments do not depend on N).
SpdeTrajectory reference_solution(const Experiment& ex, int path);

/// Particle run for N on the given path against the SPDE run driven by the
/// same common increments.  Exceptions become a failed result.
RunResult coupled_run(const Experiment& ex, std::size_t n, int path,
                      const SpdeTrajectory* reference = nullptr);

struct MetricSummary {
  std::vector<double> median, q25, q75;  // per ladder entry, of sup over t
  std::vector<double> slopes;            // log-log slope between consecutive entries
  double slope = 0.0;                    // least squares over the ladder
  bool strictly_decreasing = false;
};

struct StudyResult {
  std::vector<RunResult> runs;  // ordered by (ladder index, path)
  MetricSummary sup, hetap, hneg;
  std::size_t failures = 0;
  bool pass = false;
  std::string verdict_detail;
};

/// Runs paths in parallel (capped by VORTEX_MAX_WORKERS) and summarizes.
StudyResult convergence_study(const Experiment& ex);

StudyResult summarize(const Experiment& ex, std::vector<RunResult> runs);

/// Worker count for path-level parallelism.
int worker_count();

}  // namespace vortex::harness
