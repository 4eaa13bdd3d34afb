#include "fracsub/sublinear.hpp"

#include <cmath>
#include <limits>

namespace fracsub {

double functional_J(const DirichletOperator& op, const Field& w, const Field& rho, double alpha) {
  const double quad = op.box_inner(op.apply(w), w);
  const double pot = op.box_inner(rho, clamped_pow(w, alpha + 1.0));
  return 0.5 * quad - pot / (alpha + 1.0);
}

double fit_green_constant(const Field& rho, double sigma, const std::vector<double>& ladder,
                          const Field& kconv) {
  const double floor = 1e-6 * kconv.sup_norm();
  double c = 0.0;
  for (double R : ladder) {
    DirichletOperator op(rho.grid, R, sigma);
    const Field UR = op.solve(rho);
    for (std::size_t i = 0; i < UR.size(); ++i)
      if (kconv.v[i] > floor) c = std::max(c, UR.v[i] / kconv.v[i]);
  }
  return c;
}

std::pair<Field, IterationReport> solve_ball(const Field& rho, double R, const ProblemSpec& spec,
                                             const Field& kconv, double Ctilde) {
  IterationReport rep;
  DirichletOperator op(rho.grid, R, spec.sigma);

  double rho_total = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i)
    if (op.inside(static_cast<std::int64_t>(i))) rho_total += std::abs(rho.v[i]);
  if (rho_total == 0.0) {
    // trivial problem; zero is the (minimal) solution
    rep.iterations = 1;
    return {Field(rho.grid, Boundary::zero_extension, 0.0), rep};
  }
  if (rho.min_value() < 0.0) fail(ErrorClass::assumption, "solve_ball: rho must be nonnegative");

  const double alpha = spec.alpha;
  const double C = std::max(1.0, std::pow(Ctilde * kconv.sup_norm(), alpha / (1.0 - alpha)));
  rep.sup_u = C;

  Field u = C * op.solve(rho);
  double worst_up = 0.0;
  for (int it = 1; it <= spec.max_iter; ++it) {
    const Field rhs = pointwise_mul(rho, clamped_pow(u, alpha));
    Field next = op.solve(rhs);
    const double up = max_excess(next, u);  // > 0 means the iterate increased
    worst_up = std::max(worst_up, up);
    double gap = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) gap = std::max(gap, std::abs(next.v[i] - u.v[i]));
    u = std::move(next);
    rep.iterations = it;
    if (gap < spec.tol_fixed_point) break;
    if (it == spec.max_iter)
      fail(ErrorClass::non_convergence,
           "solve_ball: fixed-point iteration did not reach tolerance");
  }
  rep.max_monotone_violation = worst_up;
  rep.monotone = worst_up <= 1e-10;
  if (!rep.monotone)
    fail(ErrorClass::non_convergence, "solve_ball: iterate sequence failed to decrease");

  const Field rhs = pointwise_mul(rho, clamped_pow(u, alpha));
  const Field Au = op.apply(u);
  rep.residual_sup = (Au - rhs).sup_norm();
  rep.energy_lhs = op.box_inner(Au, u);
  rep.energy_rhs = op.box_inner(rho, clamped_pow(u, alpha + 1.0));
  rep.energy_gap_rel = (rep.energy_rhs > 0.0)
                           ? std::abs(rep.energy_lhs - rep.energy_rhs) / rep.energy_rhs
                           : 0.0;
  rep.J_value = functional_J(op, u, rho, alpha);
  rep.sup_u = u.sup_norm();

  // sandwich: 0 <= u <= C*U_R held by monotone descent; enforce positivity
  if (u.min_value() < -1e-8 * std::max(1.0, u.sup_norm()))
    fail(ErrorClass::non_convergence, "solve_ball: solution lost positivity");
  return {std::move(u), rep};
}

std::pair<Field, IterationReport> solve_ball(const Field& rho, double R, const ProblemSpec& spec) {
  const Field kconv = riesz_convolve(rho, spec.sigma);
  const double Ctilde = 2.0 * fit_green_constant(rho, spec.sigma, {R}, kconv);
  return solve_ball(rho, R, spec, kconv, Ctilde);
}

ExhaustionLadder solve_global(const ProblemSpec& spec, const Field& rho) {
  spec.require_subcritical("solve_global");
  ExhaustionLadder lad;
  lad.radii = {spec.L / 8.0, spec.L / 4.0, spec.L / 2.0};

  const Field kconv = riesz_convolve(rho, spec.sigma);
  double rho_total = 0.0;
  for (double x : rho.v) rho_total += std::abs(x);
  if (rho_total == 0.0) {
    lad.u = Field(rho.grid, Boundary::zero_extension, 0.0);
    for (double R : lad.radii) {
      lad.u_R.push_back(lad.u);
      lad.reports.push_back(IterationReport{});
    }
    lad.inner_gaps = {0.0, 0.0};
    return lad;
  }

  lad.Ctilde = 2.0 * fit_green_constant(rho, spec.sigma, lad.radii, kconv);
  lad.supersolution_C =
      std::max(1.0, std::pow(lad.Ctilde * kconv.sup_norm(), spec.alpha / (1.0 - spec.alpha)));
  for (double R : lad.radii) {
    auto [u, rep] = solve_ball(rho, R, spec, kconv, lad.Ctilde);
    lad.u_R.push_back(std::move(u));
    lad.reports.push_back(rep);
  }

  // ordering in R on the common (smaller) box; u_R vanish outside their boxes
  for (std::size_t k = 0; k + 1 < lad.u_R.size(); ++k)
    lad.max_order_violation =
        std::max(lad.max_order_violation, max_excess(lad.u_R[k], lad.u_R[k + 1]));
  if (lad.max_order_violation > 1e-8)
    fail(ErrorClass::check_failure, "solve_global: exhaustion ladder is not monotone in R");

  const Grid& g = rho.grid;
  const double inner = spec.L / 8.0;
  for (std::size_t k = 0; k + 1 < lad.u_R.size(); ++k) {
    double gap = 0.0;
    const std::int64_t n = g.size();
    for (std::int64_t i = 0; i < n; ++i)
      if (g.radius_inf(i) <= inner)
        gap = std::max(gap, std::abs(lad.u_R[k + 1].v[static_cast<std::size_t>(i)] -
                                     lad.u_R[k].v[static_cast<std::size_t>(i)]));
    lad.inner_gaps.push_back(gap);
  }

  // whole-space representative through the convolution identity
  const Field& top = lad.u_R.back();
  const Field rhs = pointwise_mul(rho, clamped_pow(top, spec.alpha));
  lad.u = riesz_convolve(rhs, spec.sigma);
  double worst = 0.0;
  const std::int64_t n = g.size();
  for (std::int64_t i = 0; i < n; ++i)
    if (g.radius_inf(i) <= spec.L / 4.0)
      worst = std::max(worst, std::abs(lad.u.v[static_cast<std::size_t>(i)] -
                                       top.v[static_cast<std::size_t>(i)]));
  lad.identity_residual_rel = worst / std::max(top.sup_norm(), 1e-300);
  return lad;
}

MonotoneRhoReport monotone_in_rho(const Field& rho1, const Field& rho2, const ProblemSpec& spec) {
  rho1.check_same_grid(rho2, "monotone_in_rho");
  if (max_excess(rho1, rho2) > 0.0)
    fail(ErrorClass::invalid, "monotone_in_rho: need rho1 <= rho2 pointwise");
  MonotoneRhoReport rep;
  const Field u1 = solve_global(spec, rho1).u;
  const Field u2 = solve_global(spec, rho2).u;
  rep.max_violation = max_excess(u1, u2);
  rep.pass = rep.max_violation <= 1e-8;
  return rep;
}

PerturbationReport perturbation_experiment(const ProblemSpec& spec, const Field& rho,
                                           const Field& h_bump, const std::vector<double>& eps_list) {
  spec.require_subcritical("perturbation_experiment");
  if (h_bump.min_value() <= 0.0)
    fail(ErrorClass::invalid, "perturbation_experiment: h must be strictly positive");
  PerturbationReport rep;

  auto lad_low = solve_global(spec, rho);
  const Field& u_low = lad_low.u_R.back();  // ladder-top field, box quantities below
  DirichletOperator op(rho.grid, spec.L / 2.0, spec.sigma);
  const double a = spec.alpha;

  for (double eps : eps_list) {
    Field rho_eps = rho;
    for (std::size_t i = 0; i < rho_eps.size(); ++i) rho_eps.v[i] += eps * h_bump.v[i];
    auto lad_eps = solve_global(spec, rho_eps);
    const Field& u_eps = lad_eps.u_R.back();

    PerturbationPoint p;
    p.eps = eps;
    p.order_violation = max_excess(u_low, u_eps);
    if (p.order_violation > 1e-8)
      fail(ErrorClass::check_failure,
           "perturbation_experiment: ordering u_eps >= u_low failed");
    const Field term = pointwise_mul(
        pointwise_mul(clamped_pow(u_eps, a), clamped_pow(u_low, a)),
        clamped_pow(u_eps, 1.0 - a) - clamped_pow(u_low, 1.0 - a));
    p.gap_integral = op.box_inner(rho, term);
    p.gap_over_eps = p.gap_integral / eps;
    p.sup_gap = (u_eps - u_low).sup_norm();
    rep.points.push_back(p);
  }
  double lo = rep.points.front().gap_over_eps, hi = lo;
  for (const auto& p : rep.points) {
    lo = std::min(lo, p.gap_over_eps);
    hi = std::max(hi, p.gap_over_eps);
  }
  rep.ratio_spread = (lo > 0.0) ? hi / lo : std::numeric_limits<double>::infinity();
  return rep;
}

}  // namespace fracsub
