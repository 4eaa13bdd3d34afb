#pragma once

#include <vector>

#include "fracsub/grid.hpp"

namespace fracsub {

// Boundary convention attached to a sampled field: either the samples tile a
// periodic torus, or the function is understood to be zero outside the box.
enum class Boundary { periodic, zero_extension };

struct Field {
  Grid grid;
  Boundary bc = Boundary::periodic;
  std::vector<double> v;

  Field() = default;
  Field(const Grid& g, Boundary b = Boundary::periodic, double fill = 0.0)
      : grid(g), bc(b), v(static_cast<std::size_t>(g.size()), fill) {}

  std::size_t size() const { return v.size(); }
  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }

  double sup_norm() const;
  double min_value() const;
  bool all_finite() const;

  void check_same_grid(const Field& other, const char* what) const;
};

// Pointwise helpers; all require matching grids.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double c, const Field& a);
Field pointwise_mul(const Field& a, const Field& b);

// max(f, 0)^p applied samplewise; negative samples are treated as 0 so that
// fractional powers stay real.
Field clamped_pow(const Field& f, double p);

// max over grid of (a - b); negative when a <= b everywhere.
double max_excess(const Field& a, const Field& b);

}  // namespace fracsub
