#include "gpsparx/simd/kernels.hpp"

#include <cmath>

namespace gpsparx::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sq_dist_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

void exp_neg_half_scalar(const double* r2, double* out, std::size_t n,
                         double scale) {
  for (std::size_t i = 0; i < n; ++i) out[i] = scale * std::exp(-0.5 * r2[i]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar", dot_scalar, sq_dist_scalar, axpy_scalar, sum_scalar,
      exp_neg_half_scalar};
  return table;
}

}  // namespace gpsparx::simd
