#pragma once

#include <functional>

#include "fracsub/field.hpp"

// Independent reference computations for the tests. Nothing here reuses the
// library's FFT or kernel machinery: plain adaptive quadrature, dense
// one-dimensional solves, and closed forms.
namespace oracles {

// Adaptive Simpson on [a,b].
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

// int_0^inf f, mapped through x = t/(1-t).
double integrate_halfline(const std::function<double(double)>& f, double tol = 1e-12);

// (-Lap)^{sigma/2} of exp(-x^2/2) at x, N = 1, through the Fourier side:
// (1/2pi) int |xi|^sigma sqrt(2pi) e^{-xi^2/2} e^{i xi x} dxi.
double half_space_gaussian_symbol(double sigma, double x);

// int_0^inf r^{a-1} e^{-r^2/2} dr, series near the singular endpoint plus
// adaptive quadrature on the smooth rest; valid for a > 0.
double power_exp_integral(double a);

// int_0^delta (1 - cos(xi w)) w^{-1-s} dw by the alternating series of the
// cosine; fast for xi*delta < 1.
double one_minus_cos_near(double xi, double s, double delta);

// || |xi|^{s/2} g^ ||_{L2}^2 / (2pi) for the unit Gaussian, N = 1.
double gaussian_energy_sq(double s);

// Value at radius r of the periodized harmonic (sigma = 1) extension of a
// unit Gaussian on the torus [-L,L): closed-form periodic Poisson kernel
// convolved on a fine grid, with the flat zero-mode capped at height Y.
double poisson_extension_periodic(double x, double y, double L, double Y);

// Exact solution of (y^{1-s} w')' = y^{1-s} xi^2 w, w(0)=1, w(Y)=0 via
// modified Bessel functions.
double bessel_mode_profile(double sigma, double xi, double Y, double y);

// Dense second-order solve of the same two-point problem on a fine graded
// mesh; independent discretization used to cross-check the Bessel route.
double dense_mode_profile(double sigma, double xi, double Y, double y, int nodes = 60000);

// c * PV int (f(x)-f(z)) |x-z|^{-1-sigma} dz for f = exp(-z^2/2) restricted
// to [-L,L], evaluated by adaptive quadrature (zero extension outside).
double singular_integral_gaussian_1d(double sigma, double x, double L);

}  // namespace oracles
