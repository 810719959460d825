#include "vortex/harness/report.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace vortex::harness {

namespace {

using nlohmann::json;

std::string run_id(const Experiment& ex, const RunResult& r) {
  return fmt::format("{}-N{}-p{}", ex.hash.substr(0, 8), r.n, r.path);
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json metric_json(const MetricSummary& m) {
  json out;
  json med = json::array(), lo = json::array(), hi = json::array(), sl = json::array();
  for (std::size_t i = 0; i < m.median.size(); ++i) {
    med.push_back(finite_or_null(m.median[i]));
    lo.push_back(finite_or_null(m.q25[i]));
    hi.push_back(finite_or_null(m.q75[i]));
  }
  for (double s : m.slopes) sl.push_back(finite_or_null(s));
  out["median_sup_t"] = med;
  out["q25"] = lo;
  out["q75"] = hi;
  out["pairwise_slopes"] = sl;
  out["least_squares_slope"] = finite_or_null(m.slope);
  out["strictly_decreasing"] = m.strictly_decreasing;
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

std::string error_csv(const Experiment& ex, const StudyResult& study) {
  std::string out = std::string(kErrorCsvHeader) + "\n";
  for (const auto& r : study.runs) {
    const double wall = ex.cfg.record_wallclock ? r.wallclock_s : 0.0;
    for (const auto& row : r.rows) {
      out += fmt::format("{},{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                         run_id(ex, r), ex.hash, row.n, row.path, row.t, row.err_sup, row.err_hetap,
                         row.err_hneg, row.mass_plus, row.mass_minus, wall);
    }
  }
  return out;
}

std::string species_csv(const Experiment& ex, const StudyResult& study) {
  std::string out = "run_id,config_hash,N,path,t,err_sup_plus,err_sup_minus\n";
  for (const auto& r : study.runs) {
    for (const auto& row : r.rows) {
      out += fmt::format("{},{},{},{},{:.17g},{:.17g},{:.17g}\n", run_id(ex, r), ex.hash, row.n,
                         row.path, row.t, row.err_sup_plus, row.err_sup_minus);
    }
  }
  return out;
}

std::string timing_csv(const StudyResult& study) {
  std::string out = "N,path,wallclock_s,status\n";
  for (const auto& r : study.runs) {
    out += fmt::format("{},{},{:.6f},{}\n", r.n, r.path, r.wallclock_s, r.failed ? "failed" : "ok");
  }
  return out;
}

std::string summary_json(const Experiment& ex, const StudyResult& study) {
  json j;
  j["config"] = json::parse(canonical_json(ex.cfg));
  j["config_hash"] = ex.hash;
  j["truncation_M"] = ex.truncation;
  j["beta_bound"] = ex.validation.beta_bound;
  j["warnings"] = ex.validation.warnings;
  j["ladder"] = ex.cfg.ladder;
  j["metrics"] = {{"err_sup", metric_json(study.sup)},
                  {"err_Hetap", metric_json(study.hetap)},
                  {"err_Hneg", metric_json(study.hneg)}};
  json failures = json::array();
  for (const auto& r : study.runs) {
    if (r.failed) failures.push_back({{"N", r.n}, {"path", r.path}, {"message", r.message}});
  }
  j["failures"] = failures;
  j["verdict"] = study.pass ? "PASS" : "FAIL";
  j["verdict_detail"] = study.verdict_detail;
  j["verdict_rule"] =
      "median over paths of sup_t err_sup strictly decreasing along the ladder and the last "
      "median below verdict.threshold; the threshold is an artifact default, not a derived value";
  return j.dump(2) + "\n";
}

void write_study(const Experiment& ex, const StudyResult& study) {
  std::filesystem::create_directories(ex.cfg.output);
  write_text(ex.cfg.output / "errors.csv", error_csv(ex, study));
  write_text(ex.cfg.output / "species_errors.csv", species_csv(ex, study));
  write_text(ex.cfg.output / "timing.csv", timing_csv(study));
  write_text(ex.cfg.output / "summary.json", summary_json(ex, study));
}

}  // namespace vortex::harness
