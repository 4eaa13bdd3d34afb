#include "fracsub/constants.hpp"

#include <cmath>
#include <numbers>

#include "fracsub/error.hpp"

namespace fracsub {

namespace {
constexpr double kPi = std::numbers::pi;

void check_order(int N, double sigma) {
  if (N < 1 || N > 3) fail(ErrorClass::invalid, "constants: N must be 1, 2 or 3");
  if (!(sigma > 0.0 && sigma < 2.0)) fail(ErrorClass::assumption, "constants: sigma must lie in (0,2)");
}
}  // namespace

double c_singular(int N, double sigma) {
  check_order(N, sigma);
  return std::pow(2.0, sigma - 1.0) * sigma * std::tgamma((N + sigma) / 2.0) /
         (std::pow(kPi, N / 2.0) * std::tgamma(1.0 - sigma / 2.0));
}

double c_riesz(int N, double sigma) {
  check_order(N, sigma);
  if (!(sigma < static_cast<double>(N)))
    fail(ErrorClass::assumption, "Riesz kernel needs sigma < N");
  return std::tgamma((N - sigma) / 2.0) /
         (std::pow(2.0, sigma) * std::pow(kPi, N / 2.0) * std::tgamma(sigma / 2.0));
}

double mu_sigma(double sigma) {
  if (!(sigma > 0.0 && sigma < 2.0)) fail(ErrorClass::assumption, "mu_sigma: sigma must lie in (0,2)");
  return std::pow(2.0, sigma - 1.0) * std::tgamma(sigma / 2.0) / std::tgamma(1.0 - sigma / 2.0);
}

Constants constants(int N, double sigma) {
  Constants c;
  c.c_singular = c_singular(N, sigma);
  c.c_riesz = (sigma < static_cast<double>(N)) ? c_riesz(N, sigma)
                                               : std::numeric_limits<double>::quiet_NaN();
  c.mu_sigma = mu_sigma(sigma);
  return c;
}

double sphere_measure(int N) {
  switch (N) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
  }
  fail(ErrorClass::invalid, "sphere_measure: N must be 1, 2 or 3");
}

double sphere_inf_norm_moment(int N, double s) {
  if (N == 1) return 2.0;
  // Gauss-Legendre on the smooth angular profiles.
  static const double gx[16] = {
      -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
      -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
      0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
      0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
  static const double gw[16] = {
      0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
      0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
      0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
      0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
  if (N == 2) {
    // 8 * int_0^{pi/4} cos(phi)^s dphi
    double acc = 0.0;
    const double a = 0.0, b = kPi / 4.0;
    for (int i = 0; i < 16; ++i) {
      const double phi = 0.5 * (a + b) + 0.5 * (b - a) * gx[i];
      acc += gw[i] * std::pow(std::cos(phi), s);
    }
    return 8.0 * acc * 0.5 * (b - a);
  }
  // N == 3: integrate ||w||_inf^s over the sphere by splitting into the six
  // face-dominant regions; on the +z face ||w||_inf = cos(theta) with
  // tan(theta) bounded by the square cross-section. Parameterize by the
  // tangent plane: w = (u, v, 1)/sqrt(1+u^2+v^2), |u|,|v| <= 1, surface
  // element du dv / (1+u^2+v^2)^{3/2}; ||w||_inf = 1/sqrt(1+u^2+v^2).
  double acc = 0.0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const double u = gx[i], v = gx[j];
      const double q = 1.0 + u * u + v * v;
      acc += gw[i] * gw[j] * std::pow(q, -s / 2.0) / std::pow(q, 1.5);
    }
  return 6.0 * acc;
}

double outside_box_integral(int N, double sigma, double a) {
  if (!(a > 0.0)) fail(ErrorClass::invalid, "outside_box_integral: a must be positive");
  return std::pow(a, -sigma) / sigma * sphere_inf_norm_moment(N, sigma);
}

}  // namespace fracsub
