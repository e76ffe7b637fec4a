#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace gpsparx::simd {

// Hot-loop primitives behind the dense linear algebra and GP kernel math.
// Every entry has a portable scalar reference implementation; wider variants
// (AVX2+FMA on x86-64) are registered at startup when the CPU supports them
// and must agree with the reference to floating-point roundoff
// (tests/unit/simd_test.cpp).
//
// All pointers are to unaliased, not-necessarily-aligned arrays of n doubles.
struct KernelTable {
  std::string_view name;

  // sum_i a[i]*b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i (a[i]-b[i])^2
  double (*sq_dist)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha*x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // sum_i a[i]
  double (*sum)(const double* a, std::size_t n);
  // out[i] = scale * exp(-0.5 * r2[i])
  void (*exp_neg_half)(const double* r2, double* out, std::size_t n,
                       double scale);
};

// Portable reference implementations.
const KernelTable& scalar_kernels();

// Tables usable on this machine, scalar first. Stable within a process.
const std::vector<const KernelTable*>& supported_kernels();

// The table all library code routes through. Defaults to the widest supported
// variant; the environment variable GPSPARX_SIMD=scalar|avx2 pins a choice at
// startup (an unsupported request falls back to scalar).
const KernelTable& active_kernels();

// Test hook: replace the active table for the rest of the process.
void set_active_kernels(const KernelTable& table);

}  // namespace gpsparx::simd
