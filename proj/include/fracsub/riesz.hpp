#pragma once

#include <optional>

#include "fracsub/field.hpp"
#include "fracsub/problem_spec.hpp"

namespace fracsub {

// U(x) = c_riesz(N,sigma) sum_z rho(z) |x-z|^{sigma-N} h^N with zero extension
// outside the box. The singular cell at z = x carries the exact integral of
// |w|^{sigma-N} over the ball of volume h^N; cells within a few h of the
// singularity are integrated exactly as well. Direct summation for N=1,
// zero-padded cyclic convolution (factor 2) for N=2,3.
Field riesz_convolve(const Field& rho, double sigma);

struct FinitenessReport {
  double tail_integral = 0.0;       // int rho(y) / (1 + |y|^{N-sigma}) dy
  double tail_integral_half = 0.0;  // same integral over the half-width box
  double local_sup = 0.0;           // sup_x int_{B(x,1)} rho(y) |x-y|^{sigma-N} dy
  double local_majorant = 0.0;      // ||rho||_inf * omega_{N-1} / sigma
  bool pass = false;
};

// Grid diagnostics for the finiteness of the potential: the tail integral
// must have saturated (full-box vs half-box ratio below the configured
// growth ceiling) and the local singular integral must respect its explicit
// majorant.
FinitenessReport finiteness_check(const Field& rho, double sigma, const ProblemSpec& spec);

struct DecayFit {
  double nu = 0.0;
  double r = 0.0;
  double exponent = 0.0;  // sigma - nu - N/r
  double fit_a = 0.0, fit_b = 0.0;
  double slope = 0.0;
  double constant = 0.0;  // fitted prefactor
  bool pass = false;
};

// Scans the admissible region N(2-sigma)/2 < nu < N,
// max{2/sigma, N/(beta-nu)} < r < N/(N-nu) and returns the pair minimizing
// sigma - nu - N/r. Throws (assumption) when the region is empty.
DecayFit admissible_exponents(const ProblemSpec& spec);

// Least-squares slope of log U against log |x| over radial shells in [a,b].
// Requires U > 0 on the window and b within the periodization guard L/2.
DecayFit decay_fit(const Field& U, double a, double b, int shells = 24);

// Shell data used by the plot emitter: rows of (radius, mean value).
std::vector<std::array<double, 2>> radial_profile(const Field& U, double a, double b, int shells);

}  // namespace fracsub
