#include "gpsparx/gp/likelihood.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "gpsparx/common/error.hpp"
#include "gpsparx/gp/kernel.hpp"
#include "gpsparx/la/linalg.hpp"
#include "gpsparx/simd/kernels.hpp"

namespace gpsparx::gp {
namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

double mean_diagonal(const la::Matrix& k_noiseless, double noise_var) {
  double acc = 0.0;
  for (std::size_t i = 0; i < k_noiseless.rows(); ++i) acc += k_noiseless(i, i);
  return acc / static_cast<double>(k_noiseless.rows()) + noise_var;
}

}  // namespace

JitteredCholesky cholesky_with_jitter(const la::Matrix& k_noiseless,
                                      double noise_sd) {
  const std::size_t n = k_noiseless.rows();
  const double noise_var = noise_sd * noise_sd;
  const double diag_scale = mean_diagonal(k_noiseless, noise_var);
  double jitter = 0.0;
  while (true) {
    la::Matrix a = k_noiseless;
    const double shift = noise_var + jitter;
    for (std::size_t i = 0; i < n; ++i) a(i, i) += shift;
    if (la::cholesky_lower(a)) return {std::move(a), jitter};
    if (jitter == 0.0) {
      jitter = 1e-10 * diag_scale;
    } else if (jitter * 10.0 <= 1e-4 * diag_scale) {
      jitter *= 10.0;
    } else {
      std::ostringstream msg;
      msg << "Cholesky failed after jitter escalation; last jitter tried "
          << jitter << " (limit 1e-4 of mean diagonal " << diag_scale << ")";
      throw NumericError(msg.str());
    }
  }
}

double log_marginal_value(const la::Matrix& x, const la::Vector& y,
                          const GpHyperparams& hp) {
  const auto& kn = simd::active_kernels();
  const std::size_t n = x.rows();
  if (n < 1) throw InputError("log marginal likelihood needs N >= 1");
  if (y.size() != n) throw InputError("inputs and targets disagree on N");
  hp.validate();

  const la::Matrix z = scale_by_lengthscales(x, hp);
  const la::Matrix k_f = se_gram(z, hp.signal_sd);
  JitteredCholesky chol = cholesky_with_jitter(k_f, hp.noise_sd);

  la::Vector alpha = y;
  la::solve_cholesky(chol.l, alpha);
  return -0.5 * kn.dot(y.data(), alpha.data(), n) - la::sum_log_diag(chol.l) -
         0.5 * static_cast<double>(n) * kLogTwoPi;
}

LmlResult log_marginal_likelihood(const la::Matrix& x, const la::Vector& y,
                                  const GpHyperparams& hp) {
  const auto& kn = simd::active_kernels();
  const std::size_t n = x.rows();
  const std::size_t dim = hp.input_dim();
  if (n < 1) throw InputError("log marginal likelihood needs N >= 1");
  if (y.size() != n) throw InputError("inputs and targets disagree on N");
  hp.validate();

  const la::Matrix z = scale_by_lengthscales(x, hp);
  const la::Matrix k_f = se_gram(z, hp.signal_sd);
  JitteredCholesky chol = cholesky_with_jitter(k_f, hp.noise_sd);

  la::Vector alpha = y;
  la::solve_cholesky(chol.l, alpha);

  LmlResult out;
  out.jitter = chol.jitter;
  out.value = -0.5 * kn.dot(y.data(), alpha.data(), n) -
              la::sum_log_diag(chol.l) -
              0.5 * static_cast<double>(n) * kLogTwoPi;

  const la::Matrix r = la::invert_lower_transposed(chol.l);
  const la::Matrix k_inv = la::spd_inverse_from(r);

  // G = (alpha alpha^T - K^{-1}) .* K_f, reused by the signal and lengthscale
  // terms.
  la::Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = alpha[i];
    const double* kf_i = k_f.row(i);
    const double* kinv_i = k_inv.row(i);
    double* g_i = g.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      g_i[j] = (ai * alpha[j] - kinv_i[j]) * kf_i[j];
    }
  }

  out.grad.assign(dim + 2, 0.0);

  // d/d log sf: tr(W * 2 K_f) / 2 = sum_ij G_ij.
  double g_total = 0.0;
  la::Vector g_row_sums(n);
  for (std::size_t i = 0; i < n; ++i) {
    g_row_sums[i] = kn.sum(g.row(i), n);
    g_total += g_row_sums[i];
  }
  out.grad[0] = g_total;

  // d/d log l_d: 1/2 sum_ij G_ij (z_id - z_jd)^2, expanded into row
  // reductions so the inner loops stay contiguous.
  la::Vector col(n), col_sq(n);
  for (std::size_t d = 0; d < dim; ++d) {
    for (std::size_t i = 0; i < n; ++i) {
      col[i] = z(i, d);
      col_sq[i] = col[i] * col[i];
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t1 = kn.dot(g.row(i), col.data(), n);
      const double t2 = kn.dot(g.row(i), col_sq.data(), n);
      acc += col_sq[i] * g_row_sums[i] - 2.0 * col[i] * t1 + t2;
    }
    out.grad[d + 1] = 0.5 * acc;
  }

  // d/d log sn: sn^2 tr(W) = sn^2 (|alpha|^2 - tr(K^{-1})).
  double trace_k_inv = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace_k_inv += k_inv(i, i);
  out.grad[dim + 1] = hp.noise_sd * hp.noise_sd *
                      (kn.dot(alpha.data(), alpha.data(), n) - trace_k_inv);

  return out;
}

}  // namespace gpsparx::gp
