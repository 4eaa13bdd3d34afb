#include "fracsub/extension.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "fracsub/constants.hpp"
#include "fracsub/norms.hpp"
#include "fracsub/riesz.hpp"
#include "fft.hpp"

namespace fracsub {

double ExtensionField::sup() const {
  double s = 0.0;
  for (const auto& level : levels)
    for (double x : level) s = std::max(s, std::abs(x));
  return s;
}

std::size_t ExtensionField::level_index(double y) const {
  std::size_t best = 0;
  double dist = std::abs(ys[0] - y);
  for (std::size_t j = 1; j < ys.size(); ++j)
    if (std::abs(ys[j] - y) < dist) { dist = std::abs(ys[j] - y); best = j; }
  return best;
}

namespace {

std::vector<double> build_ymesh(const Grid& g, double sigma, const ExtensionOptions& opt) {
  const double y_min = (opt.y_min > 0.0) ? opt.y_min : g.h / 4.0;
  const double Y = (opt.Y > 0.0) ? opt.Y : 4.0 * g.L;
  if (!(opt.q > 1.0 && opt.q <= 1.2)) fail(ErrorClass::invalid, "extension: q must lie in (1, 1.2]");
  // the cap is only harmless once the slowest mode has decayed through the slab
  if (Y < std::log(1e3) / std::numbers::pi * g.L)
    fail(ErrorClass::invalid, "extension: Y too small, top boundary value would stay above threshold");
  std::set<double> nodes{0.0, Y};
  for (double v = y_min; v < Y; v *= opt.q) nodes.insert(v);
  for (double s : opt.snap_levels)
    if (s > 0.0 && s < Y) nodes.insert(s);
  (void)sigma;
  return std::vector<double>(nodes.begin(), nodes.end());
}

struct YScheme {
  std::vector<double> a;     // flux conductances between consecutive nodes
  std::vector<double> mass;  // dual-cell weights int y^{1-sigma}
};

YScheme build_scheme(const std::vector<double>& ys, double sigma) {
  const std::size_t K = ys.size() - 1;
  YScheme s;
  s.a.resize(K);
  for (std::size_t j = 0; j < K; ++j)
    s.a[j] = sigma / (std::pow(ys[j + 1], sigma) - std::pow(ys[j], sigma));
  s.mass.assign(K + 1, 0.0);
  for (std::size_t j = 1; j < K; ++j) {
    const double lo = 0.5 * (ys[j - 1] + ys[j]);
    const double hi = 0.5 * (ys[j] + ys[j + 1]);
    s.mass[j] = (std::pow(hi, 2.0 - sigma) - std::pow(lo, 2.0 - sigma)) / (2.0 - sigma);
  }
  return s;
}

// Profile theta_j(|xi|): solution of the capped two-point problem with unit
// boundary value. theta is real, positive, and <= 1.
std::vector<double> mode_profile(const YScheme& s, const std::vector<double>& ys, double xi2) {
  const std::size_t K = ys.size() - 1;
  const std::size_t n = K - 1;
  std::vector<double> diag(n), upper(n), rhs(n, 0.0);
  for (std::size_t j = 1; j < K; ++j) {
    const std::size_t i = j - 1;
    diag[i] = s.a[j - 1] + s.a[j] + xi2 * s.mass[j];
    upper[i] = (i + 1 < n) ? -s.a[j] : 0.0;
    if (j == 1) rhs[i] = s.a[0];
  }
  // Thomas forward sweep; the sub-diagonal coefficient at row i is -a[i]
  for (std::size_t i = 1; i < n; ++i) {
    const double w = -s.a[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> theta(K + 1, 0.0);
  theta[0] = 1.0;
  if (n > 0) {
    theta[K - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
      theta[i + 1] = (rhs[i] - upper[i] * theta[i + 2]) / diag[i];
  }
  theta[K] = 0.0;
  return theta;
}

std::vector<double> spectrum_xi2(const Grid& g) {
  std::vector<int> dims(static_cast<std::size_t>(g.dim), g.m);
  const std::int64_t nh = fftutil::half_spectrum_size(dims);
  std::vector<double> xi2(static_cast<std::size_t>(nh));
  const double base = std::numbers::pi / g.L;
  const int mlast = g.m / 2 + 1;
  for (std::int64_t i = 0; i < nh; ++i) {
    std::int64_t rest = i;
    const int klast = static_cast<int>(rest % mlast);
    rest /= mlast;
    double acc = (base * klast) * (base * klast);
    for (int d = g.dim - 2; d >= 0; --d) {
      const int k = static_cast<int>(rest % g.m);
      rest /= g.m;
      const double xi = base * freq_index(k, g.m);
      acc += xi * xi;
    }
    xi2[static_cast<std::size_t>(i)] = acc;
  }
  return xi2;
}

}  // namespace

ExtensionField extend(const Field& U, double sigma, ExtensionOptions opt) {
  if (!(sigma > 0.0 && sigma < 2.0)) fail(ErrorClass::invalid, "extension: sigma must lie in (0,2)");
  const Grid& g = U.grid;
  ExtensionField W;
  W.grid = g;
  W.sigma = sigma;
  W.ys = build_ymesh(g, sigma, opt);
  const std::size_t K = W.ys.size() - 1;
  const YScheme scheme = build_scheme(W.ys, sigma);

  std::vector<int> dims(static_cast<std::size_t>(g.dim), g.m);
  const std::int64_t nh = fftutil::half_spectrum_size(dims);
  std::vector<std::complex<double>> Uhat(static_cast<std::size_t>(nh));
  fftutil::r2c(dims, U.v.data(), Uhat.data());
  const std::vector<double> xi2 = spectrum_xi2(g);

  // modal solves; levels materialized by inverse transforms
  std::vector<std::vector<std::complex<double>>> What(
      K + 1, std::vector<std::complex<double>>(static_cast<std::size_t>(nh)));
  for (std::int64_t i = 0; i < nh; ++i) {
    const auto theta = mode_profile(scheme, W.ys, xi2[static_cast<std::size_t>(i)]);
    for (std::size_t j = 0; j <= K; ++j)
      What[j][static_cast<std::size_t>(i)] = theta[j] * Uhat[static_cast<std::size_t>(i)];
  }
  const double inv = 1.0 / static_cast<double>(g.size());
  W.levels.assign(K + 1, std::vector<double>(static_cast<std::size_t>(g.size())));
  for (std::size_t j = 0; j <= K; ++j) {
    fftutil::c2r(dims, What[j].data(), W.levels[j].data());
    for (double& x : W.levels[j]) x *= inv;
  }
  // boundary level is the data itself, exactly
  W.levels[0] = U.v;
  return W;
}

Field conormal_trace(const ExtensionField& W) {
  if (W.ys.size() < 4) fail(ErrorClass::invalid, "conormal_trace: mesh too coarse");
  const double y1 = W.ys[1], y2 = W.ys[2];
  const double ratio = y2 / y1;
  if (!(ratio > 1.0 && ratio <= 1.5))
    fail(ErrorClass::invalid, "conormal_trace: mesh is not graded near y = 0");
  const double s = W.sigma;
  const double mu = mu_sigma(s);
  const double p = 2.0 - s;  // leading boundary-layer error exponent
  const double w = std::pow(y1, p) / (std::pow(y2, p) - std::pow(y1, p));

  Field out(W.grid, Boundary::zero_extension, 0.0);
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double t1 = -mu * s * (W.levels[1][i] - W.levels[0][i]) / std::pow(y1, s);
    const double t2 = -mu * s * (W.levels[2][i] - W.levels[0][i]) / std::pow(y2, s);
    out.v[i] = t1 + (t1 - t2) * w;
  }
  return out;
}

double extension_energy(const ExtensionField& W) {
  const Grid& g = W.grid;
  const double s = W.sigma;
  const YScheme scheme = build_scheme(W.ys, s);
  const std::size_t K = W.ys.size() - 1;
  double cell = 1.0;
  for (int d = 0; d < g.dim; ++d) cell *= g.h;

  double flux = 0.0;
  for (std::size_t j = 0; j < K; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < W.levels[j].size(); ++i) {
      const double d = W.levels[j + 1][i] - W.levels[j][i];
      acc += d * d;
    }
    flux += scheme.a[j] * acc * cell;
  }
  double lateral = 0.0;
  for (std::size_t j = 1; j < K; ++j) {
    Field level(g, Boundary::periodic);
    level.v = W.levels[j];
    const double e = energy_seminorm(level, 2.0);
    lateral += scheme.mass[j] * e * e;
  }
  return mu_sigma(s) * (flux + lateral);
}

UniquenessReport linear_uniqueness_check(const Field& candidate, const Field& rho, double sigma,
                                         double rel_tol) {
  UniquenessReport rep;
  const Grid& g = candidate.grid;
  const Field reference = riesz_convolve(rho, sigma);

  double outer = 0.0;
  const std::int64_t n = g.size();
  for (std::int64_t i = 0; i < n; ++i)
    if (g.radius_inf(i) >= 0.75 * g.L)
      outer = std::max(outer, std::abs(candidate.v[static_cast<std::size_t>(i)]));
  rep.hypothesis_met = outer <= 1e-2 * candidate.sup_norm();

  const Field diff = candidate - reference;
  rep.sup_diff = diff.sup_norm();
  rep.sup_diff_tol = rel_tol * std::max(1.0, reference.sup_norm());
  if (rep.hypothesis_met) {
    const ExtensionField Wd = extend(diff, sigma);
    rep.energy_diff = extension_energy(Wd);
    const ExtensionField Wr = extend(reference, sigma);
    rep.energy_tol = rel_tol * std::max(1.0, extension_energy(Wr));
    rep.pass = rep.sup_diff <= rep.sup_diff_tol && rep.energy_diff <= rep.energy_tol;
  }
  return rep;
}

}  // namespace fracsub
