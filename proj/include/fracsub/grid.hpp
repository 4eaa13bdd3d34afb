#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fracsub/error.hpp"

namespace fracsub {

// Uniform tensor grid on the origin-centered box [-L, L)^dim with M points per
// dimension, spacing h = 2L/M. Point i along an axis sits at x = -L + i*h, so
// the torus wrap identifies index M with index 0. Storage is row-major with
// the last axis fastest (FFTW layout).
struct Grid {
  int dim = 1;
  int m = 0;        // points per dimension
  double L = 0.0;   // half-width
  double h = 0.0;   // spacing

  Grid() = default;
  Grid(int dim_, int m_, double L_);

  std::int64_t size() const;
  double coord(int i) const { return -L + h * static_cast<double>(i); }

  // Decompose a flat index into per-axis indices.
  std::array<int, 3> unflatten(std::int64_t idx) const;
  std::int64_t flatten(const std::array<int, 3>& ix) const;

  // Cartesian coordinates of a flat index.
  std::array<double, 3> point(std::int64_t idx) const;
  double radius(std::int64_t idx) const;       // Euclidean |x|
  double radius_inf(std::int64_t idx) const;   // sup-norm |x|_inf

  bool operator==(const Grid& o) const {
    return dim == o.dim && m == o.m && L == o.L;
  }
};

// Signed frequency index in [-m/2, m/2) for DFT bin k.
inline int freq_index(int k, int m) { return (k < m / 2) ? k : k - m; }

}  // namespace fracsub
