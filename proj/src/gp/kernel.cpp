#include "gpsparx/gp/kernel.hpp"

#include <cmath>
#include <vector>

#include "gpsparx/common/error.hpp"
#include "gpsparx/simd/kernels.hpp"

namespace gpsparx::gp {

double se_kernel(std::span<const double> x, std::span<const double> y,
                 const GpHyperparams& hp) {
  if (x.size() != y.size() || x.size() != hp.input_dim()) {
    throw InputError("se_kernel: input dimension does not match lengthscales");
  }
  double r2 = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double s = (x[d] - y[d]) / hp.lengthscales[d];
    r2 += s * s;
  }
  return hp.signal_sd * hp.signal_sd * std::exp(-0.5 * r2);
}

la::Matrix scale_by_lengthscales(const la::Matrix& x, const GpHyperparams& hp) {
  if (x.cols() != hp.input_dim()) {
    throw InputError("inputs and lengthscales disagree on dimension");
  }
  la::Matrix z(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double* src = x.row(i);
    double* dst = z.row(i);
    for (std::size_t d = 0; d < x.cols(); ++d) {
      dst[d] = src[d] / hp.lengthscales[d];
    }
  }
  return z;
}

la::Matrix se_gram(const la::Matrix& z, double signal_sd) {
  const auto& k = simd::active_kernels();
  const std::size_t n = z.rows();
  const double sf2 = signal_sd * signal_sd;
  la::Matrix g(n, n);
  std::vector<double> r2(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      r2[j] = k.sq_dist(z.row(i), z.row(j), z.cols());
    }
    r2[i] = 0.0;
    k.exp_neg_half(r2.data(), g.row(i), i + 1, sf2);
    for (std::size_t j = 0; j < i; ++j) g(j, i) = g(i, j);
  }
  return g;
}

la::Matrix se_cross(const la::Matrix& z_left, const la::Matrix& z_right,
                    double signal_sd) {
  const auto& k = simd::active_kernels();
  if (z_left.cols() != z_right.cols()) {
    throw InputError("se_cross: dimension mismatch");
  }
  const double sf2 = signal_sd * signal_sd;
  la::Matrix g(z_left.rows(), z_right.rows());
  std::vector<double> r2(z_right.rows());
  for (std::size_t i = 0; i < z_left.rows(); ++i) {
    for (std::size_t j = 0; j < z_right.rows(); ++j) {
      r2[j] = k.sq_dist(z_left.row(i), z_right.row(j), z_left.cols());
    }
    k.exp_neg_half(r2.data(), g.row(i), z_right.rows(), sf2);
  }
  return g;
}

}  // namespace gpsparx::gp
