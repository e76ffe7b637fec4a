#include "gpsparx/la/linalg.hpp"

#include <cmath>

#include "gpsparx/common/error.hpp"
#include "gpsparx/simd/kernels.hpp"

namespace gpsparx::la {

bool cholesky_lower(Matrix& a) {
  const auto& k = simd::active_kernels();
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InternalError("cholesky_lower: matrix not square");
  for (std::size_t i = 0; i < n; ++i) {
    double* ri = a.row(i);
    for (std::size_t j = 0; j < i; ++j) {
      const double s = ri[j] - k.dot(ri, a.row(j), j);
      ri[j] = s / a(j, j);
    }
    const double pivot = ri[i] - k.dot(ri, ri, i);
    if (!(pivot > 0.0)) return false;  // also rejects NaN
    ri[i] = std::sqrt(pivot);
    for (std::size_t j = i + 1; j < n; ++j) ri[j] = 0.0;
  }
  return true;
}

void solve_lower(const Matrix& l, Vector& b) {
  const auto& k = simd::active_kernels();
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    b[i] = (b[i] - k.dot(l.row(i), b.data(), i)) / l(i, i);
  }
}

void solve_lower_transposed(const Matrix& l, Vector& b) {
  const auto& k = simd::active_kernels();
  const std::size_t n = l.rows();
  for (std::size_t i = n; i-- > 0;) {
    const double xi = b[i] / l(i, i);
    b[i] = xi;
    k.axpy(-xi, l.row(i), b.data(), i);
  }
}

void solve_cholesky(const Matrix& l, Vector& b) {
  solve_lower(l, b);
  solve_lower_transposed(l, b);
}

Matrix invert_lower_transposed(const Matrix& l) {
  const auto& k = simd::active_kernels();
  const std::size_t n = l.rows();
  Matrix r(n, n, 0.0);
  // Row j of R solves L m = e_j, exploiting the leading zeros below row j.
  for (std::size_t j = 0; j < n; ++j) {
    double* rj = r.row(j);
    rj[j] = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      rj[i] = -k.dot(l.row(i) + j, rj + j, i - j) / l(i, i);
    }
  }
  return r;
}

Matrix spd_inverse_from(const Matrix& r) {
  const auto& k = simd::active_kernels();
  const std::size_t n = r.rows();
  Matrix inv(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = k.dot(r.row(i) + i, r.row(j) + i, n - i);
      inv(i, j) = v;
      inv(j, i) = v;
    }
  }
  return inv;
}

double sum_log_diag(const Matrix& l) {
  double acc = 0.0;
  for (std::size_t i = 0; i < l.rows(); ++i) acc += std::log(l(i, i));
  return acc;
}

Vector matvec(const Matrix& a, const Vector& x) {
  const auto& k = simd::active_kernels();
  if (x.size() != a.cols()) throw InternalError("matvec: dimension mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    y[i] = k.dot(a.row(i), x.data(), a.cols());
  }
  return y;
}

}  // namespace gpsparx::la
