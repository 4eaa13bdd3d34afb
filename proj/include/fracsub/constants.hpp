#pragma once

namespace fracsub {

// Normalization constants of the nonlocal machinery.
//   c_singular(N,s): in front of the principal-value integral with kernel
//                    |x-z|^{-N-s}; equals 2^{s-1} s Gamma((N+s)/2) /
//                    (pi^{N/2} Gamma(1-s/2)), the choice consistent with the
//                    Fourier symbol |xi|^s.
//   c_riesz(N,s):    kernel constant of the inverse, Gamma((N-s)/2) /
//                    (2^s pi^{N/2} Gamma(s/2)); requires s < N.
//   mu_sigma(s):     weight in the conormal derivative of the degenerate
//                    extension, 2^{s-1} Gamma(s/2) / Gamma(1-s/2).
struct Constants {
  double c_singular = 0.0;
  double c_riesz = 0.0;    // NaN when s >= N
  double mu_sigma = 0.0;
};

double c_singular(int N, double sigma);
double c_riesz(int N, double sigma);  // throws when sigma >= N
double mu_sigma(double sigma);
Constants constants(int N, double sigma);

// Surface measure of the unit sphere S^{N-1}: 2, 2*pi, 4*pi.
double sphere_measure(int N);

// int_{S^{N-1}} ||w||_inf^s dw, used for the exact integral of |y|^{-N-s}
// over the outside of a cube (see outside_box_integral).
double sphere_inf_norm_moment(int N, double s);

// int_{R^N \ [-a,a]^N} |y|^{-N-s} dy = a^{-s}/s * sphere_inf_norm_moment(N,s).
double outside_box_integral(int N, double sigma, double a);

}  // namespace fracsub
