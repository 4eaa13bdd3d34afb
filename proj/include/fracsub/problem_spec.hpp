#pragma once

#include <string>

#include "fracsub/grid.hpp"

namespace fracsub {

enum class RhoFamily { power_tail, gaussian, bump, custom_table };

RhoFamily parse_rho_family(const std::string& s);
std::string to_string(RhoFamily f);

// Single source of configuration truth for a run. Defaults follow the desk
// scale the verification suite is calibrated for.
struct ProblemSpec {
  int N = 2;               // spatial dimension, 1..3
  double sigma = 0.5;      // fractional order, in (0,2)
  double alpha = 0.5;      // sublinear exponent, in (0,1)
  double beta = 4.0;       // coefficient tail exponent (power_tail only)
  RhoFamily rho_family = RhoFamily::power_tail;
  std::string rho_table;   // CSV path for custom_table
  double L = 32.0;         // box half-width
  int M = 256;             // grid points per dimension, power of two, >= 16

  double tol_fixed_point = 1e-10;
  int max_iter = 200;

  // Singular-integral controls.
  double delta_over_h = 4.0;   // inner cutoff delta = delta_over_h * h
  double tail_radius = 0.0;    // 0 -> default L/2 (zero-extension mode only)

  // Extension mesh controls.
  double y_min_over_h = 0.25;  // first node y_1 = y_min_over_h * h
  double y_grade = 1.1;        // geometric ratio of the y mesh
  double y_height_over_L = 4.0;

  // Evolution controls.
  double rho_floor = 1e-6;     // evolution requires min rho >= this on its box
  double pme_t_end = 1.0;

  // Finiteness diagnostics ceilings.
  double finiteness_growth_ceiling = 1.1;
  double finiteness_majorant_factor = 1.05;

  Grid grid() const { return Grid(N, M, L); }
  double h() const { return 2.0 * L / static_cast<double>(M); }
  double delta() const { return delta_over_h * h(); }
  double tail_radius_or_default() const { return tail_radius > 0.0 ? tail_radius : L / 2.0; }

  // Throws ErrorClass::config / ErrorClass::assumption on violations.
  void validate() const;

  bool subcritical() const { return static_cast<double>(N) > 2.0 * sigma; }
  // Guard for operations that only make sense when N > 2*sigma.
  void require_subcritical(const char* what) const;
};

}  // namespace fracsub
