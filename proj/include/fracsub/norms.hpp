#pragma once

#include "fracsub/field.hpp"

namespace fracsub {

// Trapezoid quadrature of f over the torus cell; on a periodic grid every
// sample carries weight h^N, which is exact for constants and spectrally
// accurate for smooth decaying integrands.
double integral(const Field& f);

// Integral of f * rho; both fields on the same grid.
double weighted_l1(const Field& f, const Field& rho);

// Homogeneous seminorm || (-Lap)^{s/4} f ||_{L2} on the periodic grid,
// computed through Parseval: squared value is (2L)^N sum_k |xi_k|^s |c_k|^2
// with c_k the normalized DFT coefficients. Exact for trigonometric
// polynomials. Valid for 0 < s <= 2.
double energy_seminorm(const Field& f, double s);

struct WeightedNorms {
  double l1_rho = 0.0;
  double sup_norm = 0.0;
  double energy_seminorm = 0.0;
};

WeightedNorms weighted_norms(const Field& f, const Field& rho, double sigma);

}  // namespace fracsub
