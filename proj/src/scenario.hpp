#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace ch6 {

struct ScenarioResult {
  int exit_code = 0;  // 0 checks passed, 1 a check failed, 3 blow-up
  bool checks_passed = false;
  std::vector<std::pair<std::string, std::string>> summary;
  std::string message;
};

// Runs one named scenario end to end and leaves its artifacts in
// cfg.out_dir: config_resolved.cfg, summary.txt and the scenario's CSV and
// snapshot files.  Configuration problems throw; a solution that stops being
// finite is reported through exit_code 3, not an exception.
//
//   equivalence   formulation residual across both parameter regimes
//   smalldata     dissipative run with conservation and monotonicity gates
//   decay3d       decay exponents of a small solution against the heat baseline
//   contraction   fixed-point iteration contraction factors
//   inequalities  functional inequality calibration sweep
//   baseline      fourth-order heat flow decay fit alone
ScenarioResult run_scenario(const RunConfig& cfg);

}  // namespace ch6
