#include "fracsub/grid.hpp"

#include <cmath>

namespace fracsub {

Grid::Grid(int dim_, int m_, double L_) : dim(dim_), m(m_), L(L_) {
  if (dim < 1 || dim > 3) fail(ErrorClass::invalid, "grid dimension must be 1, 2 or 3");
  if (m < 2) fail(ErrorClass::invalid, "grid needs at least 2 points per dimension");
  if (!(L > 0.0)) fail(ErrorClass::invalid, "grid half-width must be positive");
  h = 2.0 * L / static_cast<double>(m);
}

std::int64_t Grid::size() const {
  std::int64_t n = 1;
  for (int d = 0; d < dim; ++d) n *= m;
  return n;
}

std::array<int, 3> Grid::unflatten(std::int64_t idx) const {
  std::array<int, 3> ix{0, 0, 0};
  for (int d = dim - 1; d >= 0; --d) {
    ix[d] = static_cast<int>(idx % m);
    idx /= m;
  }
  return ix;
}

std::int64_t Grid::flatten(const std::array<int, 3>& ix) const {
  std::int64_t idx = 0;
  for (int d = 0; d < dim; ++d) idx = idx * m + ix[d];
  return idx;
}

std::array<double, 3> Grid::point(std::int64_t idx) const {
  auto ix = unflatten(idx);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int d = 0; d < dim; ++d) x[d] = coord(ix[d]);
  return x;
}

double Grid::radius(std::int64_t idx) const {
  auto x = point(idx);
  double r2 = 0.0;
  for (int d = 0; d < dim; ++d) r2 += x[d] * x[d];
  return std::sqrt(r2);
}

double Grid::radius_inf(std::int64_t idx) const {
  auto x = point(idx);
  double r = 0.0;
  for (int d = 0; d < dim; ++d) r = std::max(r, std::abs(x[d]));
  return r;
}

}  // namespace fracsub
