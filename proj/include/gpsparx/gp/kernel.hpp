#pragma once

#include <span>

#include "gpsparx/gp/hyperparams.hpp"
#include "gpsparx/la/matrix.hpp"

namespace gpsparx::gp {

// k(x, x') = sf^2 * exp(-1/2 * sum_d ((x_d - x'_d)/l_d)^2).
// Throws InputError on a dimension mismatch.
double se_kernel(std::span<const double> x, std::span<const double> y,
                 const GpHyperparams& hp);

// Z(i,d) = X(i,d) / l_d. Pairwise scaled squared distances between rows of Z
// are the kernel exponent, which is what the Gram builders below consume.
la::Matrix scale_by_lengthscales(const la::Matrix& x, const GpHyperparams& hp);

// Symmetric noiseless Gram matrix of pre-scaled rows.
la::Matrix se_gram(const la::Matrix& z, double signal_sd);

// Cross-covariance (rows of z_left) x (rows of z_right).
la::Matrix se_cross(const la::Matrix& z_left, const la::Matrix& z_right,
                    double signal_sd);

}  // namespace gpsparx::gp
