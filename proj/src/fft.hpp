#pragma once

#include <complex>
#include <vector>

#include "fracsub/field.hpp"

// Thin FFTW wrapper. Plans are created with FFTW_ESTIMATE (deterministic) and
// cached per transform shape together with persistent buffers; callers copy
// in and out. Everything here is single-threaded.
namespace fracsub::fftutil {

std::int64_t prod(const std::vector<int>& dims);

// Unnormalized forward DFT, real input, half-spectrum output
// (last axis length dims.back()/2 + 1).
void r2c(const std::vector<int>& dims, const double* in, std::complex<double>* out);

// Unnormalized inverse of r2c; scale by 1/prod(dims) to invert.
void c2r(const std::vector<int>& dims, const std::complex<double>* in, double* out);

// DST-I (RODFT00) along every axis; applying twice multiplies by
// prod(2*(dims[d]+1)).
void dst1(const std::vector<int>& dims, const double* in, double* out);

std::int64_t half_spectrum_size(const std::vector<int>& dims);

// In-place Fourier multiplier on a torus field: F <- ifft(mult .* fft(F)).
// mult lives on the half-spectrum lattice of f's grid.
void apply_multiplier(Field& f, const std::vector<double>& mult);

// Real cyclic convolution kernel of the same shape as the data, prepared once.
struct CyclicKernel {
  std::vector<int> dims;
  std::vector<std::complex<double>> khat;  // r2c transform of the kernel table
};

CyclicKernel prepare_kernel(const std::vector<int>& dims, const std::vector<double>& table);

// out(x) = sum_z table(x - z) f(z), cyclically. f must match kernel dims
// (use zero-padding in the caller for zero-extension semantics).
std::vector<double> conv_apply(const CyclicKernel& k, const std::vector<double>& f);

}  // namespace fracsub::fftutil
