#include "fracsub/coefficient.hpp"

#include <cmath>

#include "fracsub/csv.hpp"

namespace fracsub {

Field make_coefficient(const ProblemSpec& spec) {
  spec.validate();
  const Grid g = spec.grid();
  if (spec.rho_family == RhoFamily::custom_table)
    return coefficient_from_table(g, spec.rho_table);

  Field rho(g, Boundary::zero_extension);
  const std::int64_t n = g.size();
  for (std::int64_t i = 0; i < n; ++i) {
    const double r = g.radius(i);
    double val = 0.0;
    switch (spec.rho_family) {
      case RhoFamily::power_tail:
        val = std::pow(1.0 + r * r, -spec.beta / 2.0);
        break;
      case RhoFamily::gaussian:
        val = std::exp(-r * r / 2.0);
        break;
      case RhoFamily::bump:
        val = (r < 1.0) ? std::exp(1.0 - 1.0 / (1.0 - r * r)) : 0.0;
        break;
      case RhoFamily::custom_table:
        break;
    }
    rho.v[static_cast<std::size_t>(i)] = val;
  }
  double total = 0.0;
  for (double x : rho.v) total += x;
  if (!(total > 0.0)) fail(ErrorClass::assumption, "coefficient vanished identically on the grid");
  return rho;
}

Field gaussian_field(const Grid& g, double width) {
  Field f(g, Boundary::zero_extension);
  const std::int64_t n = g.size();
  for (std::int64_t i = 0; i < n; ++i) {
    const double r = g.radius(i);
    f.v[static_cast<std::size_t>(i)] = std::exp(-r * r / (2.0 * width * width));
  }
  return f;
}

Field positive_bump(const Grid& g) {
  // strictly positive, smooth and integrable; a Gaussian would underflow to
  // zero at the corners of desk-scale boxes
  Field f(g, Boundary::zero_extension);
  const std::int64_t n = g.size();
  for (std::int64_t i = 0; i < n; ++i) {
    const double r = g.radius(i);
    f.v[static_cast<std::size_t>(i)] = std::pow(1.0 + r * r, -(g.dim + 1.0));
  }
  return f;
}

Field coefficient_from_table(const Grid& g, const std::string& csv_path) {
  auto rows = csv_read(csv_path);
  if (rows.empty()) fail(ErrorClass::config, "coefficient table is empty: " + csv_path);
  Field rho(g, Boundary::zero_extension);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != g.dim + 1)
      fail(ErrorClass::config, "coefficient table rows must have N coordinates plus a value");
    std::array<int, 3> ix{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) {
      int i = static_cast<int>(std::llround((row[d] + g.L) / g.h));
      if (i < 0) i = 0;
      if (i >= g.m) i = g.m - 1;
      ix[d] = i;
    }
    const double val = row[static_cast<std::size_t>(g.dim)];
    if (val < 0.0) fail(ErrorClass::assumption, "coefficient table contains a negative value");
    rho.v[static_cast<std::size_t>(g.flatten(ix))] = val;
  }
  double total = 0.0;
  for (double x : rho.v) total += x;
  if (!(total > 0.0)) fail(ErrorClass::assumption, "coefficient table is identically zero");
  return rho;
}

}  // namespace fracsub
