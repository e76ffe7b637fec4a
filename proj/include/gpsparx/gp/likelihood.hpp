#pragma once

#include "gpsparx/gp/hyperparams.hpp"
#include "gpsparx/la/matrix.hpp"

namespace gpsparx::gp {

// Cholesky of K_f + (sn^2 + jitter) I with escalating jitter: starts at 0,
// then 1e-10 * mean(diag) growing tenfold up to 1e-4 * mean(diag). Throws
// NumericError naming the jitter reached when even the largest fails.
struct JitteredCholesky {
  la::Matrix l;
  double jitter = 0.0;
};
JitteredCholesky cholesky_with_jitter(const la::Matrix& k_noiseless,
                                      double noise_sd);

struct LmlResult {
  double value = 0.0;
  // d value / d log theta, packed as [sf, l_1..l_D, sn].
  std::vector<double> grad;
  double jitter = 0.0;
};

// Exact log marginal likelihood of targets y under a zero-mean GP with the
// SE-ARD kernel:
//   value = -1/2 y^T alpha - sum_i log L_ii - N/2 log(2 pi)
// with alpha = (K_f + sn^2 I)^{-1} y. The gradient is analytic, via
// d/d theta = 1/2 tr((alpha alpha^T - K^{-1}) dK/d theta) applied per
// log-hyperparameter. Inputs are used as given; standardization is the
// caller's business (fit() does it).
LmlResult log_marginal_likelihood(const la::Matrix& x, const la::Vector& y,
                                  const GpHyperparams& hp);

// Value only; skips the O(N^3) inverse the gradient needs. Same jitter
// policy.
double log_marginal_value(const la::Matrix& x, const la::Vector& y,
                          const GpHyperparams& hp);

}  // namespace gpsparx::gp
