#pragma once

#include <string>
#include <vector>

#include "fracsub/problem_spec.hpp"

namespace fracsub {

enum class Check {
  operator_xval,
  inversion,
  exhaustion,
  energy_identity,
  decay,
  extension_trace,
  pme_uniqueness,
  perturbation,
};

Check parse_check(const std::string& name);
std::string to_string(Check c);

// A named run: the problem parameters plus the list of enabled checks.
struct Scenario {
  std::string name = "scenario";
  ProblemSpec spec;
  std::vector<Check> checks;
};

// Parses a plain-text "key = value" configuration ('#' starts a comment).
// Unknown keys, malformed values, or an empty check list are config errors.
Scenario parse_config(const std::string& path);
Scenario parse_config_text(const std::string& text);

}  // namespace fracsub
