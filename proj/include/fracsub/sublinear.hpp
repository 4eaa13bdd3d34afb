#pragma once

#include "fracsub/dirichlet.hpp"
#include "fracsub/field.hpp"
#include "fracsub/problem_spec.hpp"
#include "fracsub/riesz.hpp"

namespace fracsub {

struct IterationReport {
  int iterations = 0;
  double residual_sup = 0.0;       // || A u - rho u^alpha ||_inf on the box
  double energy_lhs = 0.0;         // || (-Lap_D)^{sigma/4} u ||^2
  double energy_rhs = 0.0;         // int_box rho u^{alpha+1}
  double energy_gap_rel = 0.0;
  double J_value = 0.0;
  bool monotone = true;
  double max_monotone_violation = 0.0;  // positive when an iterate increased
  double sup_u = 0.0;
};

// Descends from the supersolution C * U_R, U_R the linear Dirichlet solution,
// C = max(1, (Ctilde ||K*rho||_inf)^{alpha/(1-alpha)}), iterating
// u <- solve(rho u^alpha) until the sup gap drops below tol. Iterates are
// nonincreasing; a genuine increase flags non-convergence.
std::pair<Field, IterationReport> solve_ball(const Field& rho, double R, const ProblemSpec& spec,
                                             const Field& kconv, double Ctilde);

// Convenience overload computing the potential and the Green constant itself.
std::pair<Field, IterationReport> solve_ball(const Field& rho, double R, const ProblemSpec& spec);

// Fits the constant in U_R <= C * (K*rho): max over the ladder of the ratio,
// taken over samples where the potential is appreciable.
double fit_green_constant(const Field& rho, double sigma, const std::vector<double>& ladder,
                          const Field& kconv);

struct ExhaustionLadder {
  std::vector<double> radii;
  std::vector<Field> u_R;
  std::vector<IterationReport> reports;
  std::vector<double> inner_gaps;        // successive sup gaps on the innermost box
  double max_order_violation = 0.0;      // u_R <= u_R' check
  Field u;                               // whole-space representative K*(rho u^alpha)
  double identity_residual_rel = 0.0;    // ||u_top - K*(rho u_top^alpha)||/||u_top|| inner quarter
  double Ctilde = 0.0;
  double supersolution_C = 0.0;
};

// Exhaustion over R in {L/8, L/4, L/2}: monotone in R, gaps Cauchy, and the
// limit representative satisfies the convolution identity. Requires
// N > 2*sigma. Monotonicity violations beyond tolerance throw
// (check_failure); the identity residual is reported for the caller to gate.
ExhaustionLadder solve_global(const ProblemSpec& spec, const Field& rho);

struct MonotoneRhoReport {
  double max_violation = 0.0;  // sup (u1 - u2), expected <= tolerance
  bool pass = false;
};

// rho1 <= rho2 pointwise must produce u1 <= u2.
MonotoneRhoReport monotone_in_rho(const Field& rho1, const Field& rho2, const ProblemSpec& spec);

struct PerturbationPoint {
  double eps = 0.0;
  double gap_integral = 0.0;     // G(eps) = int rho u_eps^a u_low^a (u_eps^{1-a} - u_low^{1-a})
  double gap_over_eps = 0.0;
  double sup_gap = 0.0;          // || u_eps - u_low ||_inf
  double order_violation = 0.0;  // positive if u_eps < u_low somewhere beyond tolerance
};

struct PerturbationReport {
  std::vector<PerturbationPoint> points;  // one per epsilon, decreasing
  double ratio_spread = 0.0;              // max G/eps over min G/eps
};

// Solves with rho + eps*h for each epsilon and measures the weighted gap
// functional; the quotient G(eps)/eps must stay bounded across the list.
PerturbationReport perturbation_experiment(const ProblemSpec& spec, const Field& rho,
                                           const Field& h_bump, const std::vector<double>& eps_list);

// Energy functional 1/2 ||(-Lap_D)^{s/4} w||^2 - 1/(alpha+1) int rho w^{alpha+1}.
double functional_J(const DirichletOperator& op, const Field& w, const Field& rho, double alpha);

}  // namespace fracsub
