#include "fracsub/singular.hpp"

#include <cmath>
#include <memory>

#include "fracsub/constants.hpp"
#include "fft.hpp"

namespace fracsub {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1,1].
const double kGx[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
const double kGw[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

struct CellIntegrator {
  int dim;
  double expo;  // measure exponent 2 - N - sigma
  double h;
  std::array<double, 3> node;  // hat center in reflected coordinates

  double hat(const std::array<double, 3>& u) const {
    double p = 1.0;
    for (int d = 0; d < dim; ++d) {
      const double t = 1.0 - std::abs(u[d] / h - node[d]);
      if (t <= 0.0) return 0.0;
      p *= t;
    }
    return p;
  }

  double integrand(const std::array<double, 3>& u) const {
    double r2 = 0.0;
    for (int d = 0; d < dim; ++d) r2 += u[d] * u[d];
    return hat(u) * std::pow(r2, expo / 2.0);
  }

  double gauss_box(const std::array<double, 3>& lo, const std::array<double, 3>& hi) const {
    const int n = 16;
    double acc = 0.0;
    std::array<double, 3> u{0, 0, 0};
    if (dim == 1) {
      for (int i = 0; i < n; ++i) {
        u[0] = 0.5 * (lo[0] + hi[0]) + 0.5 * (hi[0] - lo[0]) * kGx[i];
        acc += kGw[i] * integrand(u);
      }
      return acc * 0.5 * (hi[0] - lo[0]);
    }
    if (dim == 2) {
      for (int i = 0; i < n; ++i) {
        u[0] = 0.5 * (lo[0] + hi[0]) + 0.5 * (hi[0] - lo[0]) * kGx[i];
        for (int j = 0; j < n; ++j) {
          u[1] = 0.5 * (lo[1] + hi[1]) + 0.5 * (hi[1] - lo[1]) * kGx[j];
          acc += kGw[i] * kGw[j] * integrand(u);
        }
      }
      return acc * 0.25 * (hi[0] - lo[0]) * (hi[1] - lo[1]);
    }
    for (int i = 0; i < n; ++i) {
      u[0] = 0.5 * (lo[0] + hi[0]) + 0.5 * (hi[0] - lo[0]) * kGx[i];
      for (int j = 0; j < n; ++j) {
        u[1] = 0.5 * (lo[1] + hi[1]) + 0.5 * (hi[1] - lo[1]) * kGx[j];
        for (int k = 0; k < n; ++k) {
          u[2] = 0.5 * (lo[2] + hi[2]) + 0.5 * (hi[2] - lo[2]) * kGx[k];
          acc += kGw[i] * kGw[j] * kGw[k] * integrand(u);
        }
      }
    }
    return acc * 0.125 * (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
  }

  // Cell with its closure touching the origin: peel dyadic shells so the
  // integrable singularity at 0 never meets a Gauss node cluster head-on.
  double singular_cell(double a) const {
    double acc = 0.0;
    double hi = a;
    for (int level = 0; level < 44; ++level) {
      const double mid = hi / 2.0;
      // shell = [0,hi]^dim \ [0,mid]^dim, decomposed into boxes by which axes
      // sit in the outer half
      const int combos = 1 << dim;
      for (int mask = 1; mask < combos; ++mask) {
        std::array<double, 3> lo{0, 0, 0}, up{0, 0, 0};
        for (int d = 0; d < dim; ++d) {
          if (mask & (1 << d)) { lo[d] = mid; up[d] = hi; }
          else { lo[d] = 0.0; up[d] = mid; }
        }
        acc += gauss_box(lo, up);
      }
      hi = mid;
    }
    return acc;
  }
};

}  // namespace

struct SingularOperator::Impl {
  fftutil::CyclicKernel kernel;
  std::vector<int> dims;
};

SingularOperator::SingularOperator(const Grid& g, double sigma, SingularOptions opt)
    : grid_(g), sigma_(sigma), opt_(opt) {
  if (!(sigma > 0.0 && sigma < 2.0)) fail(ErrorClass::invalid, "singular operator: sigma must lie in (0,2)");
  const double h = g.h;
  delta_ = (opt_.delta > 0.0) ? opt_.delta : 4.0 * h;
  if (delta_ < 2.0 * h)
    fail(ErrorClass::invalid, "singular operator: delta below 2h invalidates the inner correction");
  tail_radius_ = (opt_.tail_radius > 0.0) ? opt_.tail_radius : g.L / 2.0;
  if (opt_.mode == SingularMode::zero_extension && tail_radius_ <= delta_)
    fail(ErrorClass::invalid, "singular operator: tail_radius must exceed delta");

  const int N = g.dim;
  const double expo = 2.0 - N - sigma;  // measure density exponent
  std::vector<int> dims(static_cast<std::size_t>(N), g.m);
  const std::int64_t n = g.size();
  opt_.near_radius = std::min(opt_.near_radius, g.m / 2 - 2);

  // Hat-weight table theta_o for the m=0 kernel.
  std::vector<double> theta(static_cast<std::size_t>(n), 0.0);
  double cellw = 1.0;
  for (int d = 0; d < N; ++d) cellw *= h;
  for (std::int64_t i = 0; i < n; ++i) {
    auto ix = g.unflatten(i);
    std::array<int, 3> oi{0, 0, 0};
    double r2 = 0.0;
    int rinf = 0;
    for (int d = 0; d < N; ++d) {
      oi[d] = freq_index(ix[d], g.m);
      r2 += (oi[d] * h) * (oi[d] * h);
      rinf = std::max(rinf, std::abs(oi[d]));
    }
    if (rinf == 0) continue;  // node 0 handled below
    if (rinf > opt_.near_radius) {
      // midpoint of the measure density plus its leading curvature term
      const double lap = expo * (N + expo - 2.0) * std::pow(r2, (expo - 2.0) / 2.0);
      theta[static_cast<std::size_t>(i)] =
          cellw * (std::pow(r2, expo / 2.0) + h * h / 24.0 * lap);
    }
  }
  // exact hats near the origin (including node 0)
  {
    CellIntegrator ci{N, expo, h, {0, 0, 0}};
    const int R = opt_.near_radius;
    std::array<int, 3> a{0, 0, 0};
    const int lo = -R, hi = R;
    auto loop = [&](auto&& self, int d) -> void {
      if (d == N) {
        double tot = 0.0;
        // cells adjacent to node a: lower corners a_d - 1 or a_d per axis
        const int combos = 1 << N;
        for (int mask = 0; mask < combos; ++mask) {
          std::array<int, 3> c{0, 0, 0};
          bool origin_cell = true;
          for (int dd = 0; dd < N; ++dd) {
            c[dd] = a[dd] - ((mask >> dd) & 1);
            const int refl = (c[dd] >= 0) ? c[dd] : -(c[dd] + 1);
            if (refl != 0) origin_cell = false;
          }
          CellIntegrator local = ci;
          std::array<double, 3> blo{0, 0, 0}, bhi{0, 0, 0};
          for (int dd = 0; dd < N; ++dd) {
            const int refl = (c[dd] >= 0) ? c[dd] : -(c[dd] + 1);
            blo[dd] = refl * h;
            bhi[dd] = (refl + 1) * h;
            local.node[dd] = (c[dd] >= 0) ? a[dd] : -a[dd];
          }
          tot += origin_cell ? local.singular_cell(h) : local.gauss_box(blo, bhi);
        }
        std::array<int, 3> wrapped{0, 0, 0};
        for (int dd = 0; dd < N; ++dd) wrapped[dd] = ((a[dd] % g.m) + g.m) % g.m;
        theta[static_cast<std::size_t>(g.flatten(wrapped))] = tot;
        return;
      }
      for (a[d] = lo; a[d] <= hi; ++a[d]) self(self, d + 1);
    };
    loop(loop, 0);
  }

  // Periodic images and the closed-form remainder beyond the image box.
  if (opt_.mode == SingularMode::periodic) {
    const int mm = opt_.image_range;
    const double remainder_density =
        outside_box_integral(N, sigma, (2.0 * mm + 1.0) * g.L) / std::pow(2.0 * g.L, N);
    for (std::int64_t i = 0; i < n; ++i) {
      auto ix = g.unflatten(i);
      std::array<double, 3> w{0, 0, 0};
      double r2 = 0.0;
      for (int d = 0; d < N; ++d) {
        w[d] = freq_index(ix[d], g.m) * h;
        r2 += w[d] * w[d];
      }
      if (r2 == 0.0) continue;
      double kimg = remainder_density;
      std::array<int, 3> m{0, 0, 0};
      auto iloop = [&](auto&& self, int d) -> void {
        if (d == N) {
          bool zero = true;
          for (int dd = 0; dd < N; ++dd) zero = zero && m[dd] == 0;
          if (zero) return;
          double s2 = 0.0;
          for (int dd = 0; dd < N; ++dd) {
            const double y = w[dd] + 2.0 * g.L * m[dd];
            s2 += y * y;
          }
          kimg += std::pow(s2, -(N + sigma) / 2.0);
          return;
        }
        for (m[d] = -mm; m[d] <= mm; ++m[d]) self(self, d + 1);
      };
      iloop(iloop, 0);
      theta[static_cast<std::size_t>(i)] += cellw * r2 * kimg;
    }
  }

  // Split below/above delta; assemble the convolution kernel W_o = theta/|w|^2.
  std::vector<double> W(static_cast<std::size_t>(n), 0.0);
  double S = 0.0, inner = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    auto ix = g.unflatten(i);
    double r2 = 0.0;
    for (int d = 0; d < N; ++d) {
      const double wd = freq_index(ix[d], g.m) * h;
      r2 += wd * wd;
    }
    const double r = std::sqrt(r2);
    const bool below = r < delta_ - 1e-12 * h;
    const bool beyond = opt_.mode == SingularMode::zero_extension && r > tail_radius_;
    if (below) {
      inner += theta[static_cast<std::size_t>(i)];
    } else if (!beyond) {
      const double wv = theta[static_cast<std::size_t>(i)] / r2;
      W[static_cast<std::size_t>(i)] = wv;
      S += wv;
    }
  }
  kernel_sum_ = S;
  inner_mass_ = inner;
  far_tail_ = (opt_.mode == SingularMode::zero_extension)
                  ? sphere_measure(N) * std::pow(tail_radius_, -sigma) / sigma
                  : 0.0;

  auto impl = std::make_shared<Impl>();
  impl->dims = dims;
  impl->kernel = fftutil::prepare_kernel(dims, W);
  impl_ = std::move(impl);
}

Field SingularOperator::apply(const Field& f) const {
  if (!(f.grid == grid_)) fail(ErrorClass::invalid, "singular operator: grid mismatch");
  if (opt_.mode == SingularMode::zero_extension) {
    // decay precondition: sup over the outer quarter of the box
    double outer = 0.0;
    const std::int64_t n = grid_.size();
    for (std::int64_t i = 0; i < n; ++i)
      if (grid_.radius_inf(i) >= 0.75 * grid_.L)
        outer = std::max(outer, std::abs(f.v[static_cast<std::size_t>(i)]));
    if (outer > 1e-3 * f.sup_norm())
      fail(ErrorClass::invalid,
           "singular operator: field does not decay; use the periodic mode for non-decaying data");
  }

  const int N = grid_.dim;
  const double cs = c_singular(N, sigma_);
  std::vector<double> conv = fftutil::conv_apply(impl_->kernel, f.v);

  // centered discrete Laplacian with periodic index arithmetic
  Field out = f;
  const double h2 = grid_.h * grid_.h;
  const std::int64_t n = grid_.size();
  for (std::int64_t i = 0; i < n; ++i) {
    auto ix = grid_.unflatten(i);
    double lap = 0.0;
    for (int d = 0; d < N; ++d) {
      auto up = ix, dn = ix;
      up[d] = (ix[d] + 1) % grid_.m;
      dn[d] = (ix[d] - 1 + grid_.m) % grid_.m;
      lap += f.v[static_cast<std::size_t>(grid_.flatten(up))] - 2.0 * f.v[static_cast<std::size_t>(i)] +
             f.v[static_cast<std::size_t>(grid_.flatten(dn))];
    }
    lap /= h2;
    const double fx = f.v[static_cast<std::size_t>(i)];
    double val = fx * kernel_sum_ - conv[static_cast<std::size_t>(i)];
    val += 0.5 * inner_mass_ * (-lap / static_cast<double>(N));
    val += fx * far_tail_;
    out.v[static_cast<std::size_t>(i)] = cs * val;
  }
  return out;
}

Field apply_singular(const Field& f, double sigma, double delta, double tail_radius,
                     SingularMode mode) {
  SingularOptions opt;
  opt.delta = delta;
  opt.tail_radius = tail_radius;
  opt.mode = mode;
  return SingularOperator(f.grid, sigma, opt).apply(f);
}

}  // namespace fracsub
