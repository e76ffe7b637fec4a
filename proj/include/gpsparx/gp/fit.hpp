#pragma once

#include <cstdint>

#include "gpsparx/gp/hyperparams.hpp"
#include "gpsparx/gp/trained_gp.hpp"
#include "gpsparx/la/matrix.hpp"

namespace gpsparx::gp {

// Controls the multi-start marginal-likelihood maximization. Restart 0 starts
// from the caller's initial hyperparameters (converted to the standardized
// frame); the remaining restarts draw log-uniform starting points in that
// frame from the ranges below. All log-hyperparameters are kept inside
// [log_lower, log_upper] throughout.
struct FitOptions {
  int restarts = 5;
  int max_iters = 100;
  double grad_tol = 1e-5;        // stop when the gradient inf-norm drops below
  std::uint64_t seed = 0;        // seeds the restart draws
  int threads = 1;               // restarts run in parallel when > 1
  double log_lower = -13.815510557964274;  // log(1e-6)
  double log_upper = 13.815510557964274;   // log(1e6)
  double draw_signal_sd_min = 0.05;
  double draw_signal_sd_max = 5.0;
  double draw_lengthscale_min = 0.1;
  double draw_lengthscale_max = 10.0;
  double draw_noise_sd_min = 1e-3;
  double draw_noise_sd_max = 1.0;
};

// Maximizes the log marginal likelihood over log-hyperparameters by gradient
// ascent with a backtracking (Armijo) line search, restarted opts.restarts
// times, and conditions a model on (x, y) at the best point found. The merge
// across restarts is deterministic: highest objective wins, ties broken by
// the lower restart index. Throws InputError for bad shapes, non-finite data,
// or N < 2, and NumericError if every restart fails conditioning.
TrainedGp fit(const la::Matrix& x, const la::Vector& y,
              const GpHyperparams& init, const FitOptions& opts = {});

}  // namespace gpsparx::gp
