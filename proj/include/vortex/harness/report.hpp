#pragma once

#include <filesystem>
#include <string>

#include "vortex/harness/experiment.hpp"

namespace vortex::harness {

/// Header of the main error CSV.
inline constexpr const char* kErrorCsvHeader =
    "run_id,config_hash,N,path,t,err_sup,err_Hetap,err_Hneg,mass_plus,mass_minus,wallclock_s";

/// The main error CSV.  wallclock_s is 0 unless record_wallclock is set, so
/// that reruns are byte-identical.
std::string error_csv(const Experiment& ex, const StudyResult& study);
/// Per-species sup errors: run_id,config_hash,N,path,t,err_sup_plus,err_sup_minus.
std::string species_csv(const Experiment& ex, const StudyResult& study);
/// Measured timings: N,path,wallclock_s,status.
std::string timing_csv(const StudyResult& study);
/// Config echo, per-N medians and IQR, slopes, verdict.
std::string summary_json(const Experiment& ex, const StudyResult& study);

/// Writes errors.csv, species_errors.csv, timing.csv and summary.json under cfg.output.
void write_study(const Experiment& ex, const StudyResult& study);

}  // namespace vortex::harness
