#include "fracsub/spectral.hpp"

#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace fracsub {

SpectralOperator::SpectralOperator(const Grid& g, double sigma) : grid_(g), sigma_(sigma) {
  if (!(sigma > 0.0 && sigma < 2.0)) fail(ErrorClass::invalid, "spectral operator: sigma must lie in (0,2)");
  std::vector<int> dims(static_cast<std::size_t>(g.dim), g.m);
  const std::int64_t nh = fftutil::half_spectrum_size(dims);
  mult_.resize(static_cast<std::size_t>(nh));
  const double base = std::numbers::pi / g.L;
  const int mlast = g.m / 2 + 1;
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
    const double xil = base * klast;
    xi2 += xil * xil;
    mult_[static_cast<std::size_t>(i)] = (xi2 == 0.0) ? 0.0 : std::pow(xi2, sigma_ / 2.0);
  }
}

Field SpectralOperator::apply(const Field& f) const {
  if (!(f.grid == grid_)) fail(ErrorClass::invalid, "spectral operator: grid mismatch");
  Field out = f;
  fftutil::apply_multiplier(out, mult_);
  return out;
}

Field apply_spectral(const Field& f, double sigma) {
  return SpectralOperator(f.grid, sigma).apply(f);
}

}  // namespace fracsub
