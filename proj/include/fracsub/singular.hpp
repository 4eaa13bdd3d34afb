#pragma once

#include <memory>

#include "fracsub/field.hpp"

namespace fracsub {

// Principal-value discretization of the fractional Laplacian,
//
//   c_singular(N,sigma) * [ sum over grid cells with |z-x| >= delta of
//     (f(x) - f(z)) * W(x-z) + inner correction + far-field handling ]
//
// written against the symmetrized difference: pairing w and -w turns the
// integrand into G(w) = (2f(x) - f(x+w) - f(x-w)) / |w|^2 against the finite
// measure |w|^{2-N-sigma} dw, so the quadrature weights W are product-
// integration weights (exact integrals of nodal hat functions against the
// measure near the origin, midpoint values further out). The inner region
// |w| < delta is collapsed onto the second-order Taylor term
// -(lap_h f / (2N)) * (leftover measure), the odd term cancelling by
// principal-value symmetry.
//
// Two far-field semantics:
//   periodic:       the kernel is the periodized |w|^{-N-sigma} (lattice
//                   images summed explicitly, the remainder integrated in
//                   closed form over the outside of the image box), matching
//                   the Fourier-multiplier operator on the torus.
//   zero_extension: f is treated as 0 outside the box; cells beyond
//                   tail_radius are dropped and replaced by the analytic tail
//                   f(x) * omega_{N-1} * tail_radius^{-sigma} / sigma.
enum class SingularMode { periodic, zero_extension };

struct SingularOptions {
  double delta = 0.0;        // inner cutoff; default 4h; rejected below 2h
  double tail_radius = 0.0;  // zero_extension only; default L/2
  SingularMode mode = SingularMode::periodic;
  int image_range = 4;       // lattice images per axis (periodic mode)
  int near_radius = 10;      // nodes given exact hat weights
};

class SingularOperator {
 public:
  SingularOperator(const Grid& g, double sigma, SingularOptions opt = {});

  Field apply(const Field& f) const;

  const Grid& grid() const { return grid_; }
  double order() const { return sigma_; }
  double delta() const { return delta_; }

 private:
  Grid grid_;
  double sigma_;
  SingularOptions opt_;
  double delta_ = 0.0;
  double tail_radius_ = 0.0;
  double kernel_sum_ = 0.0;   // S = sum of included W_o
  double inner_mass_ = 0.0;   // leftover hat measure below delta
  double far_tail_ = 0.0;     // zero-extension analytic tail factor
  struct Impl;
  std::shared_ptr<const Impl> impl_;  // prepared convolution kernel
};

Field apply_singular(const Field& f, double sigma, double delta = 0.0, double tail_radius = 0.0,
                     SingularMode mode = SingularMode::periodic);

}  // namespace fracsub
