#include "fracsub/dirichlet.hpp"

#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace fracsub {

DirichletOperator::DirichletOperator(const Grid& ambient, double R, double sigma)
    : ambient_(ambient), R_(R), sigma_(sigma) {
  if (!(sigma > 0.0 && sigma < 2.0)) fail(ErrorClass::invalid, "dirichlet: sigma must lie in (0,2)");
  if (!(R > 0.0 && R <= ambient.L)) fail(ErrorClass::invalid, "dirichlet: R must lie in (0, L]");
  const double steps = R / ambient.h;
  if (std::abs(steps - std::round(steps)) > 1e-9)
    fail(ErrorClass::invalid, "dirichlet: box half-width must align with the grid");
  const int k = static_cast<int>(std::round(steps));
  // interior points of (-R, R): x = -R + h, ..., R - h
  i0_ = ambient.m / 2 - k + 1;
  m_ = 2 * k - 1;
  if (m_ < 1) fail(ErrorClass::invalid, "dirichlet: box too small for the grid");

  std::int64_t n = 1;
  for (int d = 0; d < ambient.dim; ++d) n *= m_;
  lam_pow_fwd_.resize(static_cast<std::size_t>(n), 0.0);
  lam_pow_inv_.resize(lam_pow_fwd_.size(), 0.0);
  const double base = std::numbers::pi / (2.0 * R);
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t rest = i;
    double lam = 0.0;
    for (int d = ambient.dim - 1; d >= 0; --d) {
      const int kk = static_cast<int>(rest % m_) + 1;
      rest /= m_;
      lam += (kk * base) * (kk * base);
    }
    lam_pow_fwd_[static_cast<std::size_t>(i)] = std::pow(lam, sigma / 2.0);
    lam_pow_inv_[static_cast<std::size_t>(i)] = std::pow(lam, -sigma / 2.0);
    lambda_max_ = std::max(lambda_max_, lam_pow_fwd_[static_cast<std::size_t>(i)]);
  }
}

bool DirichletOperator::inside(std::int64_t flat) const {
  auto ix = ambient_.unflatten(flat);
  for (int d = 0; d < ambient_.dim; ++d)
    if (ix[d] < i0_ || ix[d] >= i0_ + m_) return false;
  return true;
}

Field DirichletOperator::transform(const Field& in, double power) const {
  if (!(in.grid == ambient_)) fail(ErrorClass::invalid, "dirichlet: grid mismatch");
  const int N = ambient_.dim;
  std::vector<int> dims(static_cast<std::size_t>(N), m_);
  const std::int64_t nb = fftutil::prod(dims);

  // gather interior block
  std::vector<double> block(static_cast<std::size_t>(nb));
  std::array<int, 3> ix{0, 0, 0};
  for (std::int64_t i = 0; i < nb; ++i) {
    std::int64_t rest = i;
    for (int d = N - 1; d >= 0; --d) {
      ix[d] = static_cast<int>(rest % m_) + i0_;
      rest /= m_;
    }
    block[static_cast<std::size_t>(i)] = in.v[static_cast<std::size_t>(ambient_.flatten(ix))];
  }

  std::vector<double> hat(block.size());
  fftutil::dst1(dims, block.data(), hat.data());
  const auto& lam = (power > 0.0) ? lam_pow_fwd_ : lam_pow_inv_;
  for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= lam[i];
  fftutil::dst1(dims, hat.data(), block.data());
  double scale = 1.0;
  for (int d = 0; d < N; ++d) scale *= 2.0 * (m_ + 1);
  const double inv = 1.0 / scale;

  Field out(ambient_, Boundary::zero_extension, 0.0);
  for (std::int64_t i = 0; i < nb; ++i) {
    std::int64_t rest = i;
    for (int d = N - 1; d >= 0; --d) {
      ix[d] = static_cast<int>(rest % m_) + i0_;
      rest /= m_;
    }
    out.v[static_cast<std::size_t>(ambient_.flatten(ix))] = block[static_cast<std::size_t>(i)] * inv;
  }
  return out;
}

Field DirichletOperator::solve(const Field& rhs) const { return transform(rhs, -1.0); }
Field DirichletOperator::apply(const Field& u) const { return transform(u, +1.0); }

double DirichletOperator::box_inner(const Field& a, const Field& b) const {
  a.check_same_grid(b, "box_inner");
  double acc = 0.0;
  const std::int64_t n = ambient_.size();
  for (std::int64_t i = 0; i < n; ++i)
    if (inside(i)) acc += a.v[static_cast<std::size_t>(i)] * b.v[static_cast<std::size_t>(i)];
  double w = 1.0;
  for (int d = 0; d < ambient_.dim; ++d) w *= ambient_.h;
  return acc * w;
}

double DirichletOperator::box_seminorm(const Field& u) const {
  // <apply(u), u> over the box equals sum lambda^{s/2} c_k^2 R^N
  return std::sqrt(std::max(0.0, box_inner(apply(u), u)));
}

Field dirichlet_solve(const Field& rho, double R, double sigma) {
  return DirichletOperator(rho.grid, R, sigma).solve(rho);
}

Field dirichlet_apply(const Field& u, double R, double sigma) {
  return DirichletOperator(u.grid, R, sigma).apply(u);
}

}  // namespace fracsub
