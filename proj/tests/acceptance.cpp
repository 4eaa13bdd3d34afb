// Acceptance suite: runs every verification criterion at its pinned
// configuration and prints one PASS/FAIL line each. Exit code 0 iff all pass.
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracsub/coefficient.hpp"
#include "fracsub/constants.hpp"
#include "fracsub/dirichlet.hpp"
#include "fracsub/extension.hpp"
#include "fracsub/norms.hpp"
#include "fracsub/pme.hpp"
#include "fracsub/riesz.hpp"
#include "fracsub/singular.hpp"
#include "fracsub/spectral.hpp"
#include "fracsub/sublinear.hpp"

using namespace fracsub;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

ProblemSpec default_spec() {
  ProblemSpec sp;
  sp.N = 2;
  sp.sigma = 0.5;
  sp.alpha = 0.5;
  sp.beta = 4.0;
  sp.L = 32.0;
  sp.M = 256;
  return sp;
}

double xval_mismatch(int N, double sigma, double L, int M, double region) {
  Grid g(N, M, L);
  const Field f = gaussian_field(g);
  const Field spec = apply_spectral(f, sigma);
  SingularOptions opt;
  opt.mode = SingularMode::periodic;
  const Field sing = SingularOperator(g, sigma, opt).apply(f);
  double ref = 0.0, diff = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    if (g.radius(i) > region) continue;
    const std::size_t k = static_cast<std::size_t>(i);
    ref = std::max(ref, std::abs(spec.v[k]));
    diff = std::max(diff, std::abs(spec.v[k] - sing.v[k]));
  }
  return diff / ref;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FRACSUB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

}  // namespace

int main() {
  // 1. operator cross-validation, both discretizations of the same operator
  {
    double worst1 = 0.0;
    for (double s : {0.5, 1.0, 1.5}) worst1 = std::max(worst1, xval_mismatch(1, s, 16.0, 2048, 8.0));
    const double m2 = xval_mismatch(2, 0.5, 16.0, 256, 6.0);
    report(1, "spectral vs singular cross-validation", worst1 <= 1e-3 && m2 <= 5e-3,
           "N=1 worst " + fmt(worst1) + " <= 1e-3, N=2 " + fmt(m2) + " <= 5e-3");
  }

  // 2. inversion identity at M = 512
  {
    ProblemSpec sp = default_spec();
    sp.M = 512;
    const Field rho = make_coefficient(sp);
    const Field back = apply_spectral(riesz_convolve(rho, sp.sigma), sp.sigma);
    const Grid g = sp.grid();
    double worst = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i)
      if (g.radius_inf(i) <= sp.L / 2.0)
        worst = std::max(worst, std::abs(back.v[static_cast<std::size_t>(i)] -
                                         rho.v[static_cast<std::size_t>(i)]));
    const double rel = worst / rho.sup_norm();
    report(2, "inversion of the potential", rel <= 2e-2, fmt(rel) + " <= 2e-2");
  }

  // 3..6 share the default-configuration exhaustion pipeline
  ProblemSpec sp = default_spec();
  const Field rho = make_coefficient(sp);
  const ExhaustionLadder lad = solve_global(sp, rho);
  {
    const bool mono = lad.max_order_violation <= 1e-8;
    const bool cauchy = lad.inner_gaps[1] <= 0.5 * lad.inner_gaps[0];
    report(3, "exhaustion monotone with Cauchy gaps", mono && cauchy,
           "violation " + fmt(lad.max_order_violation) + " <= 1e-8, gaps " +
               fmt(lad.inner_gaps[0]) + " -> " + fmt(lad.inner_gaps[1]));
  }
  {
    double worst = 0.0;
    for (const auto& r : lad.reports) worst = std::max(worst, r.energy_gap_rel);
    report(4, "energy identity on every ball", worst <= 1e-4, fmt(worst) + " <= 1e-4");
  }
  {
    report(5, "fixed-point convolution identity", lad.identity_residual_rel <= 2e-2,
           fmt(lad.identity_residual_rel) + " <= 2e-2");
  }
  {
    const DecayFit best = admissible_exponents(sp);
    const DecayFit fit = decay_fit(lad.u, sp.L / 4.0, sp.L / 2.0);
    const double threshold = best.exponent + 0.2;
    const bool pass = fit.slope <= threshold && fit.slope <= -1.3;
    report(6, "tail decay against the admissible exponent", pass,
           "slope " + fmt(fit.slope) + " <= " + fmt(threshold) + " and <= -1.3");
  }

  // 7. extension trace, fractional and classical
  {
    const Field U = riesz_convolve(rho, sp.sigma);
    const Field trace = conormal_trace(extend(U, sp.sigma));
    const Grid g = sp.grid();
    double worst = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i)
      if (g.radius_inf(i) <= sp.L / 2.0)
        worst = std::max(worst, std::abs(trace.v[static_cast<std::size_t>(i)] -
                                         rho.v[static_cast<std::size_t>(i)]));
    const double rel = worst / rho.sup_norm();

    Grid g1(1, 1024, 16.0);
    const Field gauss = gaussian_field(g1);
    const Field tr = conormal_trace(extend(gauss, 1.0));
    const Field ref = apply_spectral(gauss, 1.0);
    const double classical = (tr - ref).sup_norm() / ref.sup_norm();
    report(7, "conormal trace of the extension", rel <= 5e-2 && classical <= 1e-2,
           "trace " + fmt(rel) + " <= 5e-2, sigma=1 check " + fmt(classical) + " <= 1e-2");
  }

  // 8..9: evolution criteria at the desk-scale configuration
  {
    ProblemSpec ps = default_spec();
    ps.L = 16.0;
    ps.M = 128;
    const double m = 1.0 / ps.alpha, R = 4.0;
    ProblemSpec coarse = ps;
    coarse.M = ps.M / 2;
    const Field rho_c = make_coefficient(coarse);
    const Field rho_f = make_coefficient(ps);
    const Field u_c = solve_ball(rho_c, R, coarse).first;
    const Field u_f = solve_ball(rho_f, R, ps).first;
    const double r_c = separable_residual(u_c, rho_c, R, m, ps.sigma, 1.0, 0.02);
    const double r_f = separable_residual(u_f, rho_f, R, m, ps.sigma, 1.0, 0.005);
    report(8, "separable solution residual refinement", r_c >= 3.0 * r_f,
           fmt(r_c) + " -> " + fmt(r_f) + ", ratio " + fmt(r_c / r_f) + " >= 3");

    const auto ue =
        uniqueness_experiment(ps, rho_f, u_f, {ps.L / 16.0, ps.L / 8.0, ps.L / 4.0},
                              {1.0, 10.0, 100.0});
    double ratio_excess = 0.0, bound100 = 0.0, meas100 = 0.0;
    for (const auto& r : ue.ratio) {
      ratio_excess = std::max(ratio_excess, r.ratio_measured - r.ratio_bound);
      if (r.t == 100.0) {
        bound100 = r.ratio_bound;
        meas100 = r.ratio_measured;
      }
    }
    const bool pass = ue.max_comparison_excess <= 1e-8 && ue.max_order_violation_R <= 1e-8 &&
                      ratio_excess <= 1e-6 && meas100 <= 1.01 + 1e-6;
    report(9, "evolution comparison and ratio bound", pass,
           "comparison excess " + fmt(ue.max_comparison_excess) + " <= 1e-8, ratio at t=100 " +
               fmt(meas100) + " <= " + fmt(bound100) + " + 1e-6");
  }

  // 10. perturbation estimate at the default configuration
  {
    const Field h = positive_bump(sp.grid());
    const auto rep = perturbation_experiment(sp, rho, h, {1e-1, 1e-2, 1e-3});
    const double shrink = rep.points[2].sup_gap / rep.points[1].sup_gap;
    const bool monotone = rep.points[1].sup_gap <= rep.points[0].sup_gap &&
                          rep.points[2].sup_gap <= rep.points[1].sup_gap;
    const bool pass = rep.ratio_spread <= 2.0 && shrink <= 10.0 && monotone;
    report(10, "perturbation gap scales with epsilon", pass,
           "G/eps spread " + fmt(rep.ratio_spread) + " <= 2, gap shrink " + fmt(shrink) +
               " <= 10");
  }

  // 11. structural invariants at machine precision; byte-identical reruns
  {
    Grid g(2, 64, 8.0);
    std::mt19937 rng(23);
    std::normal_distribution<double> nrm;
    Field f(g), h(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
      f.v[i] = nrm(rng);
      h.v[i] = nrm(rng);
    }
    const Field Af = apply_spectral(f, 0.9);
    const Field Ah = apply_spectral(h, 0.9);
    double a = 0.0, b = 0.0, nf = 0.0, nh = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      a += Af.v[i] * h.v[i];
      b += f.v[i] * Ah.v[i];
      nf += f.v[i] * f.v[i];
      nh += h.v[i] * h.v[i];
    }
    const double selfadj = std::abs(a - b) / (std::sqrt(nf) * std::sqrt(nh));
    const double semi =
        (apply_spectral(apply_spectral(f, 0.6), 0.9) - apply_spectral(f, 1.5)).sup_norm() /
        apply_spectral(f, 1.5).sup_norm();
    DirichletOperator op(g, 4.0, 0.7);
    Field inside(g, Boundary::zero_extension);
    for (std::int64_t i = 0; i < g.size(); ++i)
      if (op.inside(i)) inside.v[static_cast<std::size_t>(i)] = nrm(rng);
    const double roundtrip = (op.apply(op.solve(inside)) - inside).sup_norm() / inside.sup_norm();

    fs::create_directories("acceptance_io");
    {
      std::ofstream cfg("acceptance_io/quick.cfg");
      cfg << "N = 2\nsigma = 0.5\nalpha = 0.5\nbeta = 4\nL = 16\nM = 128\n"
             "checks = inversion, exhaustion, energy_identity, decay\n";
    }
    bool identical = run_cli("run --config acceptance_io/quick.cfg --out acceptance_io/a") == 0 &&
                     run_cli("run --config acceptance_io/quick.cfg --out acceptance_io/b") == 0;
    if (identical)
      for (const auto& entry : fs::directory_iterator("acceptance_io/a"))
        identical = identical &&
                    slurp(entry.path()) == slurp(fs::path("acceptance_io/b") / entry.path().filename());
    const bool pass = selfadj <= 1e-12 && semi <= 1e-12 && roundtrip <= 1e-12 && identical;
    report(11, "machine-precision structure and determinism", pass,
           "selfadj " + fmt(selfadj) + ", semigroup " + fmt(semi) + ", roundtrip " +
               fmt(roundtrip) + ", reruns identical " + (identical ? "yes" : "no"));
    fs::remove_all("acceptance_io");
  }

  // full default configuration through the command line: every check green
  {
    fs::create_directories("acceptance_io2");
    {
      std::ofstream cfg("acceptance_io2/default.cfg");
      cfg << "name = default\nN = 2\nsigma = 0.5\nalpha = 0.5\nbeta = 4\nL = 32\nM = 256\n"
             "checks = operator_xval, inversion, exhaustion, energy_identity, decay, "
             "extension_trace, pme_uniqueness, perturbation\n";
    }
    const int code = run_cli("run --config acceptance_io2/default.cfg --out acceptance_io2/out");
    report(12, "default configuration runs green end to end", code == 0,
           "exit code " + std::to_string(code));
    if (code != 0) std::printf("%s", slurp("acceptance_io2/out/report.txt").c_str());
    fs::remove_all("acceptance_io2");
  }

  std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
