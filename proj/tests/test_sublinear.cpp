#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fracsub/coefficient.hpp"
#include "fracsub/norms.hpp"
#include "fracsub/sublinear.hpp"

using namespace fracsub;

TEST_SUITE_BEGIN("sublinear");

namespace {

ProblemSpec desk_spec(int M = 128) {
  ProblemSpec sp;
  sp.N = 2;
  sp.sigma = 0.5;
  sp.alpha = 0.5;
  sp.beta = 4.0;
  sp.L = 16.0;
  sp.M = M;
  return sp;
}

}  // namespace

TEST_CASE("zero coefficient gives the trivial solution") {
  ProblemSpec sp = desk_spec(64);
  Field zero(sp.grid(), Boundary::zero_extension);
  auto [u, rep] = solve_ball(zero, sp.L / 2.0, sp, zero, 1.0);
  CHECK(u.sup_norm() == 0.0);
  CHECK(rep.iterations == 1);
}

TEST_CASE("ball solve satisfies residual and energy identities") {
  ProblemSpec sp = desk_spec(256);
  const Field rho = make_coefficient(sp);
  auto [u, rep] = solve_ball(rho, 8.0, sp);
  CHECK(rep.monotone);
  CHECK(u.min_value() >= -1e-10);
  const Field rhs = pointwise_mul(rho, clamped_pow(u, sp.alpha));
  CHECK(rep.residual_sup <= 1e-6 * rhs.sup_norm());
  CHECK(rep.energy_gap_rel <= 1e-4);
  CHECK(rep.energy_gap_rel <= 1e-8);  // discretely the identity is near exact
}

TEST_CASE("sandwiched between zero and the supersolution") {
  ProblemSpec sp = desk_spec(128);
  const Field rho = make_coefficient(sp);
  const Field kconv = riesz_convolve(rho, sp.sigma);
  const double Ctilde = 2.0 * fit_green_constant(rho, sp.sigma, {8.0}, kconv);
  auto [u, rep] = solve_ball(rho, 8.0, sp, kconv, Ctilde);
  const double C = std::max(1.0, std::pow(Ctilde * kconv.sup_norm(), sp.alpha / (1.0 - sp.alpha)));
  const Field super = C * dirichlet_solve(rho, 8.0, sp.sigma);
  CHECK(u.min_value() >= -1e-10);
  CHECK(max_excess(u, super) <= 1e-8);
}

TEST_CASE("energy functional is stationary at the solution") {
  ProblemSpec sp = desk_spec(128);
  const Field rho = make_coefficient(sp);
  const double R = 8.0;
  auto [u, rep] = solve_ball(rho, R, sp);
  DirichletOperator op(sp.grid(), R, sp.sigma);

  std::mt19937 rng(17);
  std::normal_distribution<double> nrm;
  const Grid g = sp.grid();
  for (int trial = 0; trial < 5; ++trial) {
    // random smooth direction vanishing on the box boundary
    Field phi(g, Boundary::zero_extension);
    const double base = std::numbers::pi / (2.0 * R);
    const double c1 = nrm(rng), c2 = nrm(rng), c3 = nrm(rng);
    for (std::int64_t i = 0; i < g.size(); ++i) {
      if (!op.inside(i)) continue;
      const auto x = g.point(i);
      const double s1 = std::sin(base * (x[0] + R)), s2 = std::sin(base * (x[1] + R));
      phi.v[static_cast<std::size_t>(i)] =
          c1 * s1 * s2 + c2 * std::sin(2.0 * base * (x[0] + R)) * s2 +
          c3 * s1 * std::sin(3.0 * base * (x[1] + R));
    }
    const double eps = 1e-4 * u.sup_norm() / phi.sup_norm();
    const double jp = functional_J(op, u + eps * phi, rho, sp.alpha);
    const double jm = functional_J(op, u - 1.0 * eps * phi, rho, sp.alpha);
    const double deriv = (jp - jm) / (2.0 * eps);
    CHECK(std::abs(deriv) <= 1e-4 * phi.sup_norm());
  }
}

TEST_CASE("exhaustion ladder is monotone with shrinking gaps") {
  ProblemSpec sp = desk_spec(128);
  const Field rho = make_coefficient(sp);
  const ExhaustionLadder lad = solve_global(sp, rho);
  CHECK(lad.max_order_violation <= 1e-8);
  REQUIRE(lad.inner_gaps.size() == 2);
  CHECK(lad.inner_gaps[1] <= 0.5 * lad.inner_gaps[0]);
  CHECK(lad.identity_residual_rel <= 2e-2);

  // uniform bounds across the ladder: the energy identity pins both sides
  double prev_energy = 0.0;
  for (const auto& rep : lad.reports) {
    CHECK(rep.energy_rhs >= prev_energy - 1e-12);  // increasing in R
    prev_energy = rep.energy_rhs;
  }
  CHECK(lad.reports.back().energy_rhs <=
        lad.reports.front().energy_rhs + 2.0 * (lad.reports[1].energy_rhs - lad.reports[0].energy_rhs) + 1e-9);
}

TEST_CASE("global solve of the zero coefficient") {
  ProblemSpec sp = desk_spec(64);
  Field zero(sp.grid(), Boundary::zero_extension);
  const ExhaustionLadder lad = solve_global(sp, zero);
  CHECK(lad.u.sup_norm() == 0.0);
}

TEST_CASE("subcritical hypothesis is enforced") {
  ProblemSpec sp = desk_spec(64);
  sp.sigma = 1.2;  // N = 2 <= 2 sigma
  const Field rho = make_coefficient(sp);
  CHECK_THROWS_AS(solve_global(sp, rho), Error);
}

TEST_CASE("solution map is monotone in the coefficient") {
  ProblemSpec sp = desk_spec(128);
  const Field rho = make_coefficient(sp);

  // identical coefficients reproduce bit-identical solutions
  const Field u1 = solve_global(sp, rho).u;
  const Field u2 = solve_global(sp, rho).u;
  CHECK((u1 - u2).sup_norm() == 0.0);

  auto rep = monotone_in_rho(rho, 2.0 * rho, sp);
  CHECK(rep.pass);

  Field zero(sp.grid(), Boundary::zero_extension);
  auto rep0 = monotone_in_rho(zero, rho, sp);
  CHECK(rep0.pass);

  CHECK_THROWS_AS(monotone_in_rho(2.0 * rho, rho, sp), Error);
}

TEST_CASE("perturbation gap scales linearly in epsilon") {
  ProblemSpec sp = desk_spec(128);
  const Field rho = make_coefficient(sp);
  const Field h = positive_bump(sp.grid());
  const std::vector<double> eps{1e-1, 1e-2, 1e-3};
  const auto rep = perturbation_experiment(sp, rho, h, eps);
  REQUIRE(rep.points.size() == 3);
  CHECK(rep.ratio_spread <= 2.0);
  for (const auto& p : rep.points) CHECK(p.order_violation <= 1e-8);
  // shrinking sup gaps, roughly linear in eps
  CHECK(rep.points[1].sup_gap <= rep.points[0].sup_gap);
  CHECK(rep.points[2].sup_gap <= rep.points[1].sup_gap);
  CHECK(rep.points[2].sup_gap <= 10.0 * rep.points[1].sup_gap);

  // doubling h at fixed eps at most doubles the gap functional (plus slack)
  const auto rep2 = perturbation_experiment(sp, rho, 2.0 * h, {1e-2});
  CHECK(rep2.points[0].gap_integral <= 2.2 * rep.points[1].gap_integral);
}

TEST_SUITE_END();
