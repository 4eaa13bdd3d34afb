#include "fracsub/field.hpp"

#include <algorithm>
#include <cmath>

namespace fracsub {

double Field::sup_norm() const {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double Field::min_value() const {
  double s = v.empty() ? 0.0 : v[0];
  for (double x : v) s = std::min(s, x);
  return s;
}

bool Field::all_finite() const {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void Field::check_same_grid(const Field& other, const char* what) const {
  if (!(grid == other.grid)) fail(ErrorClass::invalid, std::string(what) + ": grid mismatch");
}

Field operator+(const Field& a, const Field& b) {
  a.check_same_grid(b, "field add");
  Field r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.v[i] += b.v[i];
  return r;
}

Field operator-(const Field& a, const Field& b) {
  a.check_same_grid(b, "field sub");
  Field r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.v[i] -= b.v[i];
  return r;
}

Field operator*(double c, const Field& a) {
  Field r = a;
  for (double& x : r.v) x *= c;
  return r;
}

Field pointwise_mul(const Field& a, const Field& b) {
  a.check_same_grid(b, "field mul");
  Field r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.v[i] *= b.v[i];
  return r;
}

Field clamped_pow(const Field& f, double p) {
  Field r = f;
  for (double& x : r.v) x = (x > 0.0) ? std::pow(x, p) : 0.0;
  return r;
}

double max_excess(const Field& a, const Field& b) {
  a.check_same_grid(b, "max_excess");
  double s = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, a.v[i] - b.v[i]);
  return s;
}

}  // namespace fracsub
