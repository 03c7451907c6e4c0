#pragma once

#include <string>
#include <vector>

#include "sdisc/serialize.hpp"

namespace sdisc {

struct SuiteConfig {
  std::string suite = "all";  // grassmann|supermatrix|disc|symplectic|quantize|all
  Space dims{3, 3, 2};
  int n_pairs = 2;
  int trials = 25;
  uint64_t seed = 42;
  double tol_scale = 1.0;  // multiplies every check threshold
  double soul_scale = 0.1;
  double radius = 0.7;
  int k = 1;
  std::string report_path;

  void validate() const;
};

SuiteConfig config_from_json(const json& j);
json config_to_json(const SuiteConfig& c);

struct CheckResult {
  std::string name;
  int samples = 0;
  double max_abs_error = 0.0;
  double threshold = 0.0;
  bool pass = false;
  json details;  // per-sample records where the suite emits them
};

struct Report {
  SuiteConfig config;
  std::vector<CheckResult> checks;
  json conventions;             // measured sign/composition conventions
  std::vector<std::string> findings;  // non-fatal anomalies hit during trials
  bool pass = false;
  double wall_time_s = 0.0;
  std::string version;
};

// Runs the named suite; throws ParseError for an unknown suite name.
Report run_suite(const SuiteConfig& config);

json report_to_json(const Report& r);

// One-off fixture evaluation for the CLI: applies `op` to the fixture(s).
// Known ops: phi, moebius, lift, sdet, str, inverse, exp, dagger, cocycle,
// check-group.  Returns the JSON result.
json eval_fixture(const std::string& op, const json& input,
                  const json* second_input = nullptr);

}  // namespace sdisc
