#pragma once

#include "fracsub/field.hpp"
#include "fracsub/problem_spec.hpp"

namespace fracsub {

// Builds the coefficient rho on the spec grid.
//   power_tail: (1+|x|^2)^{-beta/2}, so rho(x) <= 2^{beta/2} |x|^{-beta} for |x| >= 1
//   gaussian:   exp(-|x|^2/2)
//   bump:       exp(1 - 1/(1-|x|^2)) inside the unit ball, 0 outside
//   custom_table: nearest-sample ingest of a CSV of (x1..xN, value) rows
// Always nonnegative and not identically zero; violations are rejected.
Field make_coefficient(const ProblemSpec& spec);

// Gaussian exp(-|x|^2/2) on an arbitrary grid (handy for operator tests).
Field gaussian_field(const Grid& g, double width = 1.0);

// Strictly positive integrable bump used by the perturbation experiment.
Field positive_bump(const Grid& g);

Field coefficient_from_table(const Grid& g, const std::string& csv_path);

}  // namespace fracsub
