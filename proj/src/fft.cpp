#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>

namespace fracsub::fftutil {

std::int64_t prod(const std::vector<int>& dims) {
  std::int64_t n = 1;
  for (int d : dims) n *= d;
  return n;
}

std::int64_t half_spectrum_size(const std::vector<int>& dims) {
  std::int64_t n = 1;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) n *= dims[i];
  return n * (dims.back() / 2 + 1);
}

namespace {

enum class Kind { r2c, c2r, dst };

struct PlanEntry {
  fftw_plan plan = nullptr;
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  double* real_out = nullptr;

  ~PlanEntry() {
    if (plan) fftw_destroy_plan(plan);
    if (real) fftw_free(real);
    if (cplx) fftw_free(cplx);
    if (real_out) fftw_free(real_out);
  }
};

using Key = std::pair<Kind, std::vector<int>>;

PlanEntry& get_plan(Kind kind, const std::vector<int>& dims) {
  static std::map<Key, PlanEntry> cache;
  auto it = cache.find({kind, dims});
  if (it != cache.end()) return it->second;

  PlanEntry& e = cache[{kind, dims}];
  const int rank = static_cast<int>(dims.size());
  const std::int64_t n = prod(dims);
  const std::int64_t nh = half_spectrum_size(dims);
  switch (kind) {
    case Kind::r2c:
      e.real = fftw_alloc_real(static_cast<std::size_t>(n));
      e.cplx = fftw_alloc_complex(static_cast<std::size_t>(nh));
      e.plan = fftw_plan_dft_r2c(rank, dims.data(), e.real, e.cplx, FFTW_ESTIMATE);
      break;
    case Kind::c2r:
      e.cplx = fftw_alloc_complex(static_cast<std::size_t>(nh));
      e.real = fftw_alloc_real(static_cast<std::size_t>(n));
      e.plan = fftw_plan_dft_c2r(rank, dims.data(), e.cplx, e.real, FFTW_ESTIMATE);
      break;
    case Kind::dst: {
      e.real = fftw_alloc_real(static_cast<std::size_t>(n));
      e.real_out = fftw_alloc_real(static_cast<std::size_t>(n));
      std::vector<fftw_r2r_kind> kinds(static_cast<std::size_t>(rank), FFTW_RODFT00);
      e.plan = fftw_plan_r2r(rank, dims.data(), e.real, e.real_out, kinds.data(), FFTW_ESTIMATE);
      break;
    }
  }
  if (!e.plan) fail(ErrorClass::invalid, "fftw plan creation failed");
  return e;
}

}  // namespace

void r2c(const std::vector<int>& dims, const double* in, std::complex<double>* out) {
  PlanEntry& e = get_plan(Kind::r2c, dims);
  std::memcpy(e.real, in, sizeof(double) * static_cast<std::size_t>(prod(dims)));
  fftw_execute(e.plan);
  std::memcpy(out, e.cplx, sizeof(fftw_complex) * static_cast<std::size_t>(half_spectrum_size(dims)));
}

void c2r(const std::vector<int>& dims, const std::complex<double>* in, double* out) {
  PlanEntry& e = get_plan(Kind::c2r, dims);
  std::memcpy(e.cplx, in, sizeof(fftw_complex) * static_cast<std::size_t>(half_spectrum_size(dims)));
  fftw_execute(e.plan);
  std::memcpy(out, e.real, sizeof(double) * static_cast<std::size_t>(prod(dims)));
}

void dst1(const std::vector<int>& dims, const double* in, double* out) {
  PlanEntry& e = get_plan(Kind::dst, dims);
  std::memcpy(e.real, in, sizeof(double) * static_cast<std::size_t>(prod(dims)));
  fftw_execute(e.plan);
  std::memcpy(out, e.real_out, sizeof(double) * static_cast<std::size_t>(prod(dims)));
}

void apply_multiplier(Field& f, const std::vector<double>& mult) {
  std::vector<int> dims(static_cast<std::size_t>(f.grid.dim), f.grid.m);
  const std::int64_t nh = half_spectrum_size(dims);
  if (static_cast<std::int64_t>(mult.size()) != nh)
    fail(ErrorClass::invalid, "multiplier table does not match grid spectrum");
  std::vector<std::complex<double>> hat(static_cast<std::size_t>(nh));
  r2c(dims, f.v.data(), hat.data());
  for (std::int64_t i = 0; i < nh; ++i) hat[static_cast<std::size_t>(i)] *= mult[static_cast<std::size_t>(i)];
  c2r(dims, hat.data(), f.v.data());
  const double scale = 1.0 / static_cast<double>(prod(dims));
  for (double& x : f.v) x *= scale;
}

CyclicKernel prepare_kernel(const std::vector<int>& dims, const std::vector<double>& table) {
  CyclicKernel k;
  k.dims = dims;
  k.khat.resize(static_cast<std::size_t>(half_spectrum_size(dims)));
  r2c(dims, table.data(), k.khat.data());
  return k;
}

std::vector<double> conv_apply(const CyclicKernel& k, const std::vector<double>& f) {
  const std::int64_t n = prod(k.dims);
  const std::int64_t nh = half_spectrum_size(k.dims);
  if (static_cast<std::int64_t>(f.size()) != n)
    fail(ErrorClass::invalid, "convolution input does not match kernel dims");
  std::vector<std::complex<double>> hat(static_cast<std::size_t>(nh));
  r2c(k.dims, f.data(), hat.data());
  for (std::int64_t i = 0; i < nh; ++i) hat[static_cast<std::size_t>(i)] *= k.khat[static_cast<std::size_t>(i)];
  std::vector<double> out(static_cast<std::size_t>(n));
  c2r(k.dims, hat.data(), out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& x : out) x *= scale;
  return out;
}

}  // namespace fracsub::fftutil
