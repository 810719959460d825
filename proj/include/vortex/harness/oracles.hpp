#pragma once

#include <string>
#include <vector>

namespace vortex::harness {

struct OracleResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Names accepted by run_oracle, plus "all".
std::vector<std::string> oracle_names();

/// Runs one named analytic check.  Throws ConfigError for unknown names.
std::vector<OracleResult> run_oracle(const std::string& name, unsigned long long seed = 1);

}  // namespace vortex::harness
