#include "fracsub/norms.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "fft.hpp"

namespace fracsub {

double integral(const Field& f) {
  double acc = 0.0;
  for (double x : f.v) acc += x;
  double w = 1.0;
  for (int d = 0; d < f.grid.dim; ++d) w *= f.grid.h;
  return acc * w;
}

double weighted_l1(const Field& f, const Field& rho) {
  f.check_same_grid(rho, "weighted_l1");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f.v[i] * rho.v[i];
  double w = 1.0;
  for (int d = 0; d < f.grid.dim; ++d) w *= f.grid.h;
  return acc * w;
}

double energy_seminorm(const Field& f, double s) {
  if (!(s > 0.0 && s <= 2.0)) fail(ErrorClass::invalid, "energy_seminorm: s must lie in (0,2]");
  const Grid& g = f.grid;
  std::vector<int> dims(static_cast<std::size_t>(g.dim), g.m);
  const std::int64_t nh = fftutil::half_spectrum_size(dims);
  std::vector<std::complex<double>> hat(static_cast<std::size_t>(nh));
  fftutil::r2c(dims, f.v.data(), hat.data());

  const double base = std::numbers::pi / g.L;  // fundamental frequency
  const double norm = 1.0 / static_cast<double>(g.size());
  double cell = 1.0;
  for (int d = 0; d < g.dim; ++d) cell *= 2.0 * g.L;

  const int mlast = g.m / 2 + 1;
  double acc = 0.0;
  for (std::int64_t i = 0; i < nh; ++i) {
    std::int64_t rest = i;
    const int klast = static_cast<int>(rest % mlast);
    rest /= mlast;
    double xi2 = 0.0;
    for (int d = g.dim - 2; d >= 0; --d) {
      const int k = static_cast<int>(rest % g.m);
      rest /= g.m;
      const double xi = base * freq_index(k, g.m);
      xi2 += xi * xi;
    }
    const double xil = base * klast;  // last axis holds 0..m/2 directly
    xi2 += xil * xil;
    // conjugate pair weight: interior bins of the half spectrum count twice
    const double w = (klast == 0 || klast == g.m / 2) ? 1.0 : 2.0;
    const double c2 = std::norm(hat[static_cast<std::size_t>(i)] * norm);
    acc += w * std::pow(xi2, s / 2.0) * c2;
  }
  return std::sqrt(cell * acc);
}

WeightedNorms weighted_norms(const Field& f, const Field& rho, double sigma) {
  WeightedNorms n;
  n.l1_rho = weighted_l1(f, rho);
  n.sup_norm = f.sup_norm();
  n.energy_seminorm = energy_seminorm(f, sigma);
  return n;
}

}  // namespace fracsub
