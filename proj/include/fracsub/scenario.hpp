#pragma once

#include "fracsub/config.hpp"

namespace fracsub {

struct CheckLine {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool lower_is_better = true;  // pass when measured <= threshold
  bool pass = false;
};

struct RunResult {
  std::vector<CheckLine> lines;
  int exit_code = 0;
  std::string error;  // populated on exit codes 1..3
};

// Executes the enabled checks in dependency order, writes per-check CSVs and
// report.txt under out_dir. Exit codes: 0 all pass, 1 config error,
// 2 assumption violation, 3 non-convergence, 4 check failure.
RunResult run_scenario(const Scenario& sc, const std::string& out_dir);

// Writes the plot CSVs (decay shells, ladder gaps, evolution trajectory) for
// whichever enabled checks produce them. Deterministic bytes for a fixed
// configuration.
RunResult emit_plotdata(const Scenario& sc, const std::string& out_dir);

}  // namespace fracsub
