#include "fracsub/pme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "fracsub/dirichlet.hpp"
#include "fracsub/norms.hpp"
#include "fracsub/spectral.hpp"
#include "fracsub/sublinear.hpp"

namespace fracsub {

double SeparableSolution::Cm() const { return std::pow(m - 1.0, -1.0 / (m - 1.0)); }

Field SeparableSolution::at(double t) const {
  const double fac = Cm() * std::pow(t + tau, -1.0 / (m - 1.0));
  Field out = clamped_pow(base, 1.0 / m);
  for (double& x : out.v) x *= fac;
  return out;
}

namespace {

struct Stepper {
  // apply_op maps w -> A w (box or torus realization)
  std::function<Field(const Field&)> apply_op;
  std::function<bool(std::int64_t)> in_domain;
  double lambda_max = 0.0;
};

Trajectory evolve_common(const Field& v0, const Field& rho, double m, double t_end,
                         const std::vector<double>& sample_times, const ProblemSpec& spec,
                         const Stepper& st, double rho_min) {
  if (!(m >= 1.0)) fail(ErrorClass::invalid, "evolution: m must be >= 1");
  if (rho_min < spec.rho_floor)
    fail(ErrorClass::assumption,
         "evolution: min rho on the domain is below the positivity floor (the uniqueness "
         "mechanism assumes rho > 0)");
  if (v0.min_value() < -1e-12) fail(ErrorClass::invalid, "evolution: v0 must be nonnegative");

  Trajectory traj;
  traj.t_end = t_end;
  traj.time_integral_vm = Field(v0.grid, Boundary::zero_extension, 0.0);
  Field v = v0;
  const double sup0 = v.sup_norm();
  std::vector<double> targets = sample_times;
  std::sort(targets.begin(), targets.end());

  double t = 0.0;
  std::size_t next_target = 0;
  Field vm_prev = clamped_pow(v, m);
  while (t < t_end - 1e-14) {
    const double sup = v.sup_norm();
    if (sup > 2.0 * sup0 + 1e-12)
      fail(ErrorClass::non_convergence, "evolution: sup growth indicates instability");
    double dt = (sup > 0.0)
                    ? 0.5 * rho_min / (m * std::pow(sup, m - 1.0) * st.lambda_max)
                    : t_end - t;
    if (next_target < targets.size() && t + dt > targets[next_target] - 1e-14)
      dt = targets[next_target] - t;
    if (t + dt > t_end) dt = t_end - t;

    const Field Avm = st.apply_op(vm_prev);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!st.in_domain(static_cast<std::int64_t>(i))) continue;
      v.v[i] -= dt / rho.v[i] * Avm.v[i];
      if (v.v[i] < 0.0) {
        if (v.v[i] > -1e-12) { v.v[i] = 0.0; ++traj.clipped; }
        else if (v.v[i] < -1e-10)
          fail(ErrorClass::non_convergence, "evolution: positivity lost beyond tolerance");
      }
    }
    Field vm_next = clamped_pow(v, m);
    for (std::size_t i = 0; i < v.size(); ++i)
      traj.time_integral_vm.v[i] += 0.5 * dt * (vm_prev.v[i] + vm_next.v[i]);
    vm_prev = std::move(vm_next);
    t += dt;
    ++traj.steps;

    if (next_target < targets.size() && std::abs(t - targets[next_target]) < 1e-13) {
      traj.times.push_back(targets[next_target]);
      traj.samples.push_back(v);
      EvolutionState s;
      s.t = t;
      s.mass = weighted_l1(v, rho);
      s.sup_v = v.sup_norm();
      s.dt = dt;
      s.stability_margin = (s.sup_v > 0.0)
                               ? dt / (0.5 * rho_min / (m * std::pow(s.sup_v, m - 1.0) * st.lambda_max))
                               : 0.0;
      traj.states.push_back(s);
      ++next_target;
    }
  }
  return traj;
}

}  // namespace

Trajectory evolve_ball(const Field& v0, const Field& rho, double R, double m, double sigma,
                       double t_end, const std::vector<double>& sample_times,
                       const ProblemSpec& spec) {
  auto op = std::make_shared<DirichletOperator>(v0.grid, R, sigma);
  double rho_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rho.size(); ++i)
    if (op->inside(static_cast<std::int64_t>(i))) rho_min = std::min(rho_min, rho.v[i]);
  // exterior data must vanish
  Field w0 = v0;
  const std::int64_t n = v0.grid.size();
  for (std::int64_t i = 0; i < n; ++i)
    if (!op->inside(i)) w0.v[static_cast<std::size_t>(i)] = 0.0;

  Stepper st;
  st.apply_op = [op](const Field& w) { return op->apply(w); };
  st.in_domain = [op](std::int64_t i) { return op->inside(i); };
  st.lambda_max = op->lambda_max();
  return evolve_common(w0, rho, m, t_end, sample_times, spec, st, rho_min);
}

Trajectory evolve_torus(const Field& v0, const Field& rho, double m, double sigma, double t_end,
                        const std::vector<double>& sample_times, const ProblemSpec& spec) {
  auto op = std::make_shared<SpectralOperator>(v0.grid, sigma);
  double lmax = 0.0;
  for (double x : op->multiplier()) lmax = std::max(lmax, x);
  Stepper st;
  st.apply_op = [op](const Field& w) { return op->apply(w); };
  st.in_domain = [](std::int64_t) { return true; };
  st.lambda_max = lmax;
  return evolve_common(v0, rho, m, t_end, sample_times, spec, st, rho.min_value());
}

double separable_residual(const Field& u_base, const Field& rho, double R, double m, double sigma,
                          double t, double dt) {
  DirichletOperator op(u_base.grid, R, sigma);
  SeparableSolution sep{u_base, m, 1.0};
  const Field now = sep.at(t);
  const Field next = sep.at(t + dt);
  const Field Avm = op.apply(clamped_pow(now, m));
  double worst = 0.0;
  const std::int64_t n = u_base.grid.size();
  for (std::int64_t i = 0; i < n; ++i) {
    if (!op.inside(i)) continue;
    const std::size_t k = static_cast<std::size_t>(i);
    const double ddt = (next.v[k] - now.v[k]) / dt;
    worst = std::max(worst, std::abs(rho.v[k] * ddt + Avm.v[k]));
  }
  return worst;
}

double weak_form_residual(const Trajectory& traj, const Field& rho, double R, double m,
                          double sigma,
                          const std::function<double(const std::array<double, 3>&, double)>& psi,
                          const std::function<double(const std::array<double, 3>&, double)>& dpsi) {
  if (traj.samples.size() < 3) fail(ErrorClass::invalid, "weak_form_residual: too few samples");
  DirichletOperator op(rho.grid, R, sigma);
  const Grid& g = rho.grid;
  double acc = 0.0;
  for (std::size_t s = 0; s < traj.samples.size(); ++s) {
    const double t = traj.times[s];
    // trapezoid weight in time
    double wt;
    if (s == 0) wt = 0.5 * (traj.times[1] - traj.times[0]);
    else if (s + 1 == traj.samples.size()) wt = 0.5 * (traj.times[s] - traj.times[s - 1]);
    else wt = 0.5 * (traj.times[s + 1] - traj.times[s - 1]);

    Field psi_f(g, Boundary::zero_extension, 0.0);
    Field dpsi_f(g, Boundary::zero_extension, 0.0);
    const std::int64_t n = g.size();
    for (std::int64_t i = 0; i < n; ++i) {
      const auto x = g.point(i);
      psi_f.v[static_cast<std::size_t>(i)] = psi(x, t);
      dpsi_f.v[static_cast<std::size_t>(i)] = dpsi(x, t);
    }
    const Field& v = traj.samples[s];
    const double term_time = op.box_inner(pointwise_mul(rho, v), dpsi_f);
    const double term_form = op.box_inner(op.apply(clamped_pow(v, m)), psi_f);
    acc += wt * (term_time - term_form);
  }
  return std::abs(acc);
}

UniquenessExperiment uniqueness_experiment(const ProblemSpec& spec, const Field& rho,
                                           const Field& u_elliptic,
                                           const std::vector<double>& radii,
                                           const std::vector<double>& times) {
  spec.require_subcritical("uniqueness_experiment");
  UniquenessExperiment rep;
  rep.radii = radii;
  const double m = 1.0 / spec.alpha;
  SeparableSolution sep{u_elliptic, m, 1.0};
  const Field v0 = sep.at(0.0);  // C_m u^{1/m}

  // ladder ordering at a short horizon
  const double t_short = std::min(1.0, times.empty() ? 1.0 : times.front());
  std::vector<Field> short_samples;
  for (double R : rep.radii) {
    auto traj = evolve_ball(v0, rho, R, m, spec.sigma, t_short, {t_short}, spec);
    short_samples.push_back(traj.samples.back());
  }
  for (std::size_t k = 0; k + 1 < short_samples.size(); ++k)
    rep.max_order_violation_R =
        std::max(rep.max_order_violation_R, max_excess(short_samples[k], short_samples[k + 1]));

  // long run on the largest box: comparison and the ratio bound
  const double Rmax = rep.radii.back();
  const double t_end = times.empty() ? 1.0 : times.back();
  auto traj = evolve_ball(v0, rho, Rmax, m, spec.sigma, t_end, times, spec);

  const double Cm = sep.Cm();
  const double u_floor = 1e-8 * u_elliptic.sup_norm();
  for (std::size_t s = 0; s < traj.samples.size(); ++s) {
    const double t = traj.times[s];
    const Field& v = traj.samples[s];
    rep.max_comparison_excess =
        std::max(rep.max_comparison_excess, max_excess(v, sep.at(t)));
    RatioSample r;
    r.t = t;
    r.mass = traj.states[s].mass;
    r.sup_v = traj.states[s].sup_v;
    r.ratio_bound = std::pow((t + 1.0) / t, 1.0 / (m - 1.0));
    double meas = 0.0;
    const double tf = std::pow(t + 1.0, 1.0 / (m - 1.0));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(u_elliptic.v[i] > u_floor)) continue;
      meas = std::max(meas, v.v[i] * tf / (Cm * std::pow(u_elliptic.v[i], 1.0 / m)));
    }
    r.ratio_measured = meas;
    rep.ratio.push_back(r);
  }

  rep.pass = rep.max_order_violation_R <= 1e-8 && rep.max_comparison_excess <= 1e-8;
  for (const auto& r : rep.ratio) rep.pass = rep.pass && r.ratio_measured <= r.ratio_bound + 1e-6;
  return rep;
}

TimeIntegralDecay decay_time_integral_check(const Trajectory& traj, const ProblemSpec& spec,
                                            double a, double b) {
  TimeIntegralDecay out;
  out.admissible_exponent = admissible_exponents(spec).exponent;
  if (a <= 0.0) a = spec.L / 4.0;
  if (b <= 0.0) b = spec.L / 2.0;
  out.fit = decay_fit(traj.time_integral_vm, a, b);
  out.pass = out.fit.slope <= out.admissible_exponent + 0.2;
  out.fit.pass = out.pass;
  return out;
}

}  // namespace fracsub
