#pragma once

#include <functional>

#include "fracsub/field.hpp"
#include "fracsub/problem_spec.hpp"
#include "fracsub/riesz.hpp"

namespace fracsub {

// Separable solution built on an elliptic base u: values
// C_m (t + tau)^{-1/(m-1)} u(x)^{1/m} with C_m = (m-1)^{-1/(m-1)}.
struct SeparableSolution {
  Field base;      // elliptic solution u
  double m = 2.0;
  double tau = 1.0;

  double Cm() const;
  Field at(double t) const;
};

struct EvolutionState {
  double t = 0.0;
  double mass = 0.0;   // int rho v
  double sup_v = 0.0;
  double dt = 0.0;
  double stability_margin = 0.0;
};

struct Trajectory {
  std::vector<double> times;      // requested sample times, reached exactly
  std::vector<Field> samples;
  std::vector<EvolutionState> states;
  std::int64_t steps = 0;
  std::int64_t clipped = 0;       // negatives below 1e-12 zeroed
  Field time_integral_vm;         // int_0^{t_end} v^m ds, trapezoid in time
  double t_end = 0.0;
};

// Explicit evolution of rho dv/dt + A[v^m] = 0 on the box (-R,R)^N with the
// sine-spectral operator A and homogeneous exterior data. The step obeys
// dt = 0.5 rho_min / (m sup(v)^{m-1} Lambda_max), re-evaluated as the
// solution decays; sup growth aborts as non-convergence. rho must stay
// above the positivity floor on the box.
Trajectory evolve_ball(const Field& v0, const Field& rho, double R, double m, double sigma,
                       double t_end, const std::vector<double>& sample_times,
                       const ProblemSpec& spec);

// Same stepper on the full torus with the Fourier-multiplier operator
// (mass is conserved there instead of dissipated).
Trajectory evolve_torus(const Field& v0, const Field& rho, double m, double sigma, double t_end,
                        const std::vector<double>& sample_times, const ProblemSpec& spec);

// Discrete residual || rho d_t separable + A[separable^m] ||_inf at time t,
// with a forward difference of width dt in time. Halving h and quartering dt
// must shrink it by a factor >= 3 when the base solves its own discrete
// problem.
double separable_residual(const Field& u_base, const Field& rho, double R, double m, double sigma,
                          double t, double dt);

// Space-time weak-form defect of a trajectory against a compactly supported
// test function psi(x,t) (dpsi its time derivative).
double weak_form_residual(const Trajectory& traj, const Field& rho, double R, double m,
                          double sigma,
                          const std::function<double(const std::array<double, 3>&, double)>& psi,
                          const std::function<double(const std::array<double, 3>&, double)>& dpsi);

struct RatioSample {
  double t = 0.0;
  double mass = 0.0;
  double sup_v = 0.0;
  double ratio_bound = 0.0;     // ((t+1)/t)^{1/(m-1)}
  double ratio_measured = 0.0;  // sup_x v (t+1)^{1/(m-1)} / (C_m u^{1/m})
};

struct UniquenessExperiment {
  std::vector<double> radii;
  double max_order_violation_R = 0.0;   // v_R nondecreasing in R
  double max_comparison_excess = 0.0;   // v_Rmax <= separable
  std::vector<RatioSample> ratio;       // at the requested times
  bool pass = false;
};

// Runs the evolution mechanism behind the elliptic uniqueness proof at desk
// scale: ladder ordering in R, comparison against the separable solution,
// and the ratio bound at the requested times. The stiffness of the explicit
// stepper scales with 1/min(rho), so the evolution ladder stays on the inner
// boxes; u_elliptic should solve the discrete problem on the largest radius.
UniquenessExperiment uniqueness_experiment(const ProblemSpec& spec, const Field& rho,
                                           const Field& u_elliptic,
                                           const std::vector<double>& radii,
                                           const std::vector<double>& times);

struct TimeIntegralDecay {
  DecayFit fit;
  double admissible_exponent = 0.0;
  bool pass = false;
};

// Tail slope of int_0^t v^m ds against the best admissible exponent, fitted
// on radial shells in [a, b] (defaults L/4 and L/2).
TimeIntegralDecay decay_time_integral_check(const Trajectory& traj, const ProblemSpec& spec,
                                            double a = 0.0, double b = 0.0);

}  // namespace fracsub
