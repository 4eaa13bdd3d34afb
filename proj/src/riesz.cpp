#include "fracsub/riesz.hpp"

#include <cmath>

#include "fracsub/constants.hpp"
#include "fft.hpp"

namespace fracsub {

namespace {

const double kGx[12] = {-0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
                        -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
                        0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
                        0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
const double kGw[12] = {0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
                        0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
                        0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                        0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

// integral of |w|^{sigma-N} over the cell centered at (a,b,...)*h, exact for
// the equal-volume ball at the origin cell and Gauss elsewhere.
double kernel_cell_weight(int N, double sigma, double h, const std::array<int, 3>& c) {
  bool origin = true;
  for (int d = 0; d < N; ++d) origin = origin && c[d] == 0;
  if (origin) {
    // exact integral over the ball of volume h^N: omega r_eq^sigma / sigma
    const double omega = sphere_measure(N);
    const double vol_ball_unit = omega / N;  // volume of unit ball
    const double r_eq = h * std::pow(1.0 / vol_ball_unit, 1.0 / N);
    return omega * std::pow(r_eq, sigma) / sigma;
  }
  const double e = sigma - N;
  double acc = 0.0;
  std::array<double, 3> u{0, 0, 0};
  if (N == 1) {
    for (int i = 0; i < 12; ++i) {
      u[0] = (c[0] + 0.5 * kGx[i]) * h;
      acc += kGw[i] * std::pow(std::abs(u[0]), e);
    }
    return acc * 0.5 * h;
  }
  if (N == 2) {
    for (int i = 0; i < 12; ++i) {
      u[0] = (c[0] + 0.5 * kGx[i]) * h;
      for (int j = 0; j < 12; ++j) {
        u[1] = (c[1] + 0.5 * kGx[j]) * h;
        acc += kGw[i] * kGw[j] * std::pow(u[0] * u[0] + u[1] * u[1], e / 2.0);
      }
    }
    return acc * 0.25 * h * h;
  }
  for (int i = 0; i < 12; ++i) {
    u[0] = (c[0] + 0.5 * kGx[i]) * h;
    for (int j = 0; j < 12; ++j) {
      u[1] = (c[1] + 0.5 * kGx[j]) * h;
      for (int k = 0; k < 12; ++k) {
        u[2] = (c[2] + 0.5 * kGx[k]) * h;
        acc += kGw[i] * kGw[j] * kGw[k] *
               std::pow(u[0] * u[0] + u[1] * u[1] + u[2] * u[2], e / 2.0);
      }
    }
  }
  return acc * 0.125 * h * h * h;
}

constexpr int kNear = 3;  // exact cell integrals within this index radius

// Midpoint value of r^a over a cell plus the leading curvature term
// (h^2/24) Lap(r^a); upgrades the far-field quadrature to fourth order.
double corrected_midpoint(int N, double a, double h, double r2) {
  const double base = std::pow(r2, a / 2.0);
  const double lap = a * (N + a - 2.0) * std::pow(r2, (a - 2.0) / 2.0);
  double cell = 1.0;
  for (int d = 0; d < N; ++d) cell *= h;
  return cell * (base + h * h / 24.0 * lap);
}

}  // namespace

Field riesz_convolve(const Field& rho, double sigma) {
  const Grid& g = rho.grid;
  const int N = g.dim;
  if (!(sigma < static_cast<double>(N)))
    fail(ErrorClass::assumption,
         "riesz_convolve needs sigma < N (the subcritical regime N > 2*sigma is the safe zone)");
  const double cr = c_riesz(N, sigma);
  const double h = g.h;
  const double e = sigma - N;

  if (N == 1) {
    // direct O(M^2) sum with exact near-cell weights
    const int m = g.m;
    std::vector<double> w(static_cast<std::size_t>(2 * m - 1));
    for (int o = -(m - 1); o <= m - 1; ++o) {
      std::array<int, 3> c{o, 0, 0};
      const double wcell = (std::abs(o) <= kNear)
                               ? kernel_cell_weight(1, sigma, h, c)
                               : corrected_midpoint(1, e, h, (o * h) * (o * h));
      w[static_cast<std::size_t>(o + m - 1)] = wcell;
    }
    Field out(g, Boundary::zero_extension, 0.0);
    for (int i = 0; i < m; ++i) {
      double acc = 0.0;
      for (int j = 0; j < m; ++j)
        acc += rho.v[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(i - j + m - 1)];
      out.v[static_cast<std::size_t>(i)] = cr * acc;
    }
    return out;
  }

  // padded cyclic convolution with zero extension, padding factor 2
  const int P = 2 * g.m;
  std::vector<int> dims(static_cast<std::size_t>(N), P);
  const std::int64_t np = fftutil::prod(dims);
  std::vector<double> table(static_cast<std::size_t>(np), 0.0);
  {
    std::array<int, 3> o{0, 0, 0};
    auto loop = [&](auto&& self, int d) -> void {
      if (d == N) {
        double r2 = 0.0;
        int rinf = 0;
        for (int dd = 0; dd < N; ++dd) {
          r2 += (o[dd] * h) * (o[dd] * h);
          rinf = std::max(rinf, std::abs(o[dd]));
        }
        double wcell;
        if (rinf <= kNear)
          wcell = kernel_cell_weight(N, sigma, h, o);
        else
          wcell = corrected_midpoint(N, e, h, r2);
        std::int64_t idx = 0;
        for (int dd = 0; dd < N; ++dd) idx = idx * P + ((o[dd] + P) % P);
        table[static_cast<std::size_t>(idx)] = wcell;
        return;
      }
      for (o[d] = -(g.m - 1); o[d] <= g.m - 1; ++o[d]) self(self, d + 1);
    };
    loop(loop, 0);
  }
  auto kernel = fftutil::prepare_kernel(dims, table);

  std::vector<double> padded(static_cast<std::size_t>(np), 0.0);
  const std::int64_t n = g.size();
  for (std::int64_t i = 0; i < n; ++i) {
    auto ix = g.unflatten(i);
    std::int64_t idx = 0;
    for (int d = 0; d < N; ++d) idx = idx * P + ix[d];
    padded[static_cast<std::size_t>(idx)] = rho.v[static_cast<std::size_t>(i)];
  }
  std::vector<double> conv = fftutil::conv_apply(kernel, padded);
  Field out(g, Boundary::zero_extension, 0.0);
  for (std::int64_t i = 0; i < n; ++i) {
    auto ix = g.unflatten(i);
    std::int64_t idx = 0;
    for (int d = 0; d < N; ++d) idx = idx * P + ix[d];
    out.v[static_cast<std::size_t>(i)] = cr * conv[static_cast<std::size_t>(idx)];
  }
  return out;
}

FinitenessReport finiteness_check(const Field& rho, double sigma, const ProblemSpec& spec) {
  const Grid& g = rho.grid;
  const int N = g.dim;
  FinitenessReport rep;
  double cell = 1.0;
  for (int d = 0; d < N; ++d) cell *= g.h;

  const std::int64_t n = g.size();
  for (std::int64_t i = 0; i < n; ++i) {
    const double r = g.radius(i);
    const double val = std::abs(rho.v[static_cast<std::size_t>(i)]);
    const double kern = val / (1.0 + std::pow(r, N - sigma));
    rep.tail_integral += kern * cell;
    if (g.radius_inf(i) <= g.L / 2.0) rep.tail_integral_half += kern * cell;
  }

  // sup over x of the unit-ball singular integral, windowed direct sum
  const int reach = static_cast<int>(std::ceil(1.0 / g.h));
  double supv = 0.0;
  std::vector<double> wtab;  // offsets cache for the window
  const int width = 2 * reach + 1;
  std::int64_t wn = 1;
  for (int d = 0; d < N; ++d) wn *= width;
  wtab.resize(static_cast<std::size_t>(wn));
  for (std::int64_t q = 0; q < wn; ++q) {
    std::int64_t rest = q;
    std::array<int, 3> o{0, 0, 0};
    double r2 = 0.0;
    int rinf = 0;
    for (int d = N - 1; d >= 0; --d) {
      o[d] = static_cast<int>(rest % width) - reach;
      rest /= width;
      r2 += (o[d] * g.h) * (o[d] * g.h);
      rinf = std::max(rinf, std::abs(o[d]));
    }
    if (std::sqrt(r2) > 1.0) { wtab[static_cast<std::size_t>(q)] = 0.0; continue; }
    wtab[static_cast<std::size_t>(q)] =
        (rinf <= kNear) ? kernel_cell_weight(N, sigma, g.h, o)
                        : std::pow(r2, (sigma - N) / 2.0) * cell;
  }
  for (std::int64_t i = 0; i < n; ++i) {
    auto ix = g.unflatten(i);
    double acc = 0.0;
    for (std::int64_t q = 0; q < wn; ++q) {
      if (wtab[static_cast<std::size_t>(q)] == 0.0) continue;
      std::int64_t rest = q;
      std::array<int, 3> jx = ix;
      bool ok = true;
      for (int d = N - 1; d >= 0; --d) {
        const int od = static_cast<int>(rest % width) - reach;
        rest /= width;
        jx[d] = ix[d] + od;
        if (jx[d] < 0 || jx[d] >= g.m) { ok = false; break; }
      }
      if (!ok) continue;
      acc += std::abs(rho.v[static_cast<std::size_t>(g.flatten(jx))]) * wtab[static_cast<std::size_t>(q)];
    }
    supv = std::max(supv, acc);
  }
  rep.local_sup = supv;
  rep.local_majorant = rho.sup_norm() * sphere_measure(N) / sigma;

  const double growth = (rep.tail_integral_half > 0.0)
                            ? rep.tail_integral / rep.tail_integral_half
                            : 1.0;
  rep.pass = growth <= spec.finiteness_growth_ceiling &&
             rep.local_sup <= spec.finiteness_majorant_factor * rep.local_majorant;
  if (rho.sup_norm() == 0.0) rep.pass = true;
  return rep;
}

DecayFit admissible_exponents(const ProblemSpec& spec) {
  const double N = spec.N, sigma = spec.sigma, beta = spec.beta;
  if (!(beta > N)) fail(ErrorClass::assumption, "admissible_exponents needs beta > N");
  const double nu_lo = N * (2.0 - sigma) / 2.0, nu_hi = N;
  // every admissible pair yields an exponent strictly below sigma - N; the
  // scan returns the pair closest to that supremum, which is the exponent the
  // decay threshold is calibrated against
  DecayFit best;
  bool found = false;
  const int n_nu = 400, n_r = 400;
  for (int i = 0; i < n_nu; ++i) {
    const double nu = nu_lo + (i + 0.5) * (nu_hi - nu_lo) / n_nu;
    const double r_lo = std::max(2.0 / sigma, N / (beta - nu));
    const double r_hi = N / (N - nu);
    if (!(r_lo < r_hi)) continue;
    for (int j = 0; j < n_r; ++j) {
      const double r = r_lo + (j + 0.5) * (r_hi - r_lo) / n_r;
      const double expn = sigma - nu - N / r;
      if (!found || expn > best.exponent) {
        best.nu = nu;
        best.r = r;
        best.exponent = expn;
        found = true;
      }
    }
  }
  if (!found)
    fail(ErrorClass::assumption, "no admissible exponent: the (nu, r) constraint region is empty");
  return best;
}

std::vector<std::array<double, 2>> radial_profile(const Field& U, double a, double b, int shells) {
  std::vector<std::array<double, 2>> out;
  std::vector<double> sum(static_cast<std::size_t>(shells), 0.0);
  std::vector<std::int64_t> cnt(static_cast<std::size_t>(shells), 0);
  const std::int64_t n = U.grid.size();
  for (std::int64_t i = 0; i < n; ++i) {
    const double r = U.grid.radius(i);
    if (r < a || r >= b) continue;
    int s = static_cast<int>((r - a) / (b - a) * shells);
    if (s < 0 || s >= shells) continue;
    sum[static_cast<std::size_t>(s)] += U.v[static_cast<std::size_t>(i)];
    cnt[static_cast<std::size_t>(s)] += 1;
  }
  for (int s = 0; s < shells; ++s) {
    if (cnt[static_cast<std::size_t>(s)] == 0) continue;
    const double rc = a + (s + 0.5) * (b - a) / shells;
    out.push_back({rc, sum[static_cast<std::size_t>(s)] / cnt[static_cast<std::size_t>(s)]});
  }
  return out;
}

DecayFit decay_fit(const Field& U, double a, double b, int shells) {
  if (!(b <= U.grid.L / 2.0 + 1e-12))
    fail(ErrorClass::invalid, "decay_fit: window end must stay within L/2 (periodization guard)");
  if (!(a > 0.0 && a < b)) fail(ErrorClass::invalid, "decay_fit: bad window");
  const std::int64_t npts = U.grid.size();
  for (std::int64_t i = 0; i < npts; ++i) {
    const double r = U.grid.radius(i);
    if (r >= a && r < b && !(U.v[static_cast<std::size_t>(i)] > 0.0))
      fail(ErrorClass::invalid, "decay_fit: field must stay positive on the fit window");
  }
  auto prof = radial_profile(U, a, b, shells);
  if (static_cast<int>(prof.size()) < 4) fail(ErrorClass::invalid, "decay_fit: too few shells");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(prof.size());
  for (auto& p : prof) {
    const double x = std::log(p[0]), y = std::log(p[1]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  DecayFit fit;
  fit.fit_a = a;
  fit.fit_b = b;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.constant = std::exp((sy - fit.slope * sx) / n);
  return fit;
}

}  // namespace fracsub
