#pragma once

#include <vector>

#include "fracsub/field.hpp"

namespace fracsub {

// Fourier-multiplier realization of the fractional Laplacian on the torus:
// hat(out)_k = |xi_k|^sigma hat(f)_k. The multiplier vanishes at the zero
// frequency, so constants are annihilated, and it is symmetric under
// xi -> -xi by construction.
class SpectralOperator {
 public:
  SpectralOperator(const Grid& g, double sigma);

  const Grid& grid() const { return grid_; }
  double order() const { return sigma_; }
  const std::vector<double>& multiplier() const { return mult_; }

  Field apply(const Field& f) const;

 private:
  Grid grid_;
  double sigma_;
  std::vector<double> mult_;  // on the r2c half-spectrum lattice
};

// One-shot convenience wrapper.
Field apply_spectral(const Field& f, double sigma);

}  // namespace fracsub
