#include "gpsparx/gp/fit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "gpsparx/common/error.hpp"
#include "gpsparx/common/hash.hpp"
#include "gpsparx/gp/likelihood.hpp"

namespace gpsparx::gp {
namespace {

constexpr double kArmijoC1 = 1e-4;
constexpr double kStepGrow = 1.3;
constexpr double kStepShrink = 0.5;
constexpr double kMinStep = 1e-12;
constexpr double kTinyRelImprovement = 1e-9;
constexpr int kMaxFlatIters = 3;

struct RestartOutcome {
  bool ok = false;
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> theta;
  int iterations = 0;
  double grad_inf_norm = 0.0;
  std::string stop_reason;
};

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

void clamp_into_box(std::vector<double>& theta, const FitOptions& opts) {
  for (double& t : theta) {
    t = std::clamp(t, opts.log_lower, opts.log_upper);
  }
}

std::vector<double> draw_start(std::size_t dim, std::uint64_t seed,
                               const FitOptions& opts) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> sf(std::log(opts.draw_signal_sd_min),
                                            std::log(opts.draw_signal_sd_max));
  std::uniform_real_distribution<double> ls(
      std::log(opts.draw_lengthscale_min), std::log(opts.draw_lengthscale_max));
  std::uniform_real_distribution<double> sn(std::log(opts.draw_noise_sd_min),
                                            std::log(opts.draw_noise_sd_max));
  std::vector<double> theta(dim + 2);
  theta[0] = sf(rng);
  for (std::size_t d = 0; d < dim; ++d) theta[d + 1] = ls(rng);
  theta[dim + 1] = sn(rng);
  return theta;
}

// Projected gradient ascent with an Armijo backtracking line search on the
// step length; the sufficient-increase test uses the actual (possibly
// clamped) displacement.
RestartOutcome run_restart(const la::Matrix& xs, const la::Vector& ys,
                           std::vector<double> theta, const FitOptions& opts) {
  RestartOutcome out;
  clamp_into_box(theta, opts);

  double value;
  std::vector<double> grad;
  try {
    LmlResult r = log_marginal_likelihood(xs, ys, GpHyperparams::from_log(theta));
    value = r.value;
    grad = std::move(r.grad);
  } catch (const NumericError&) {
    out.stop_reason = "conditioning_failed";
    return out;
  }

  double step = 1.0;
  int flat_iters = 0;
  int iter = 0;
  std::string stop_reason = "max_iters";
  const std::size_t p = theta.size();

  for (; iter < opts.max_iters; ++iter) {
    const double g_inf = inf_norm(grad);
    if (g_inf < opts.grad_tol) {
      stop_reason = "gradient_tolerance";
      break;
    }
    std::vector<double> dir(p);
    for (std::size_t i = 0; i < p; ++i) dir[i] = grad[i] / g_inf;

    bool accepted = false;
    std::vector<double> cand(p);
    double cand_value = value;
    while (step >= kMinStep) {
      for (std::size_t i = 0; i < p; ++i) cand[i] = theta[i] + step * dir[i];
      clamp_into_box(cand, opts);
      double predicted = 0.0;
      for (std::size_t i = 0; i < p; ++i) {
        predicted += grad[i] * (cand[i] - theta[i]);
      }
      if (predicted <= 0.0) {
        // Clamping removed every ascent component; at a box corner.
        break;
      }
      double trial;
      try {
        trial = log_marginal_value(xs, ys, GpHyperparams::from_log(cand));
      } catch (const NumericError&) {
        step *= kStepShrink;
        continue;
      }
      if (std::isfinite(trial) && trial >= value + kArmijoC1 * predicted) {
        cand_value = trial;
        accepted = true;
        break;
      }
      step *= kStepShrink;
    }
    if (!accepted) {
      stop_reason = "line_search_exhausted";
      break;
    }

    const double improvement = cand_value - value;
    theta = cand;
    try {
      LmlResult r =
          log_marginal_likelihood(xs, ys, GpHyperparams::from_log(theta));
      value = r.value;
      grad = std::move(r.grad);
    } catch (const NumericError&) {
      stop_reason = "conditioning_failed_mid_run";
      break;
    }
    step = std::min(step * kStepGrow, 1e3);

    if (improvement <= kTinyRelImprovement * (std::abs(value) + 1.0)) {
      if (++flat_iters >= kMaxFlatIters) {
        stop_reason = "flat_objective";
        ++iter;
        break;
      }
    } else {
      flat_iters = 0;
    }
  }

  out.ok = true;
  out.value = value;
  out.theta = std::move(theta);
  out.iterations = iter;
  out.grad_inf_norm = inf_norm(grad);
  out.stop_reason = std::move(stop_reason);
  return out;
}

}  // namespace

TrainedGp fit(const la::Matrix& x, const la::Vector& y,
              const GpHyperparams& init, const FitOptions& opts) {
  const std::size_t n = x.rows();
  const std::size_t dim = x.cols();
  if (n < 2) throw InputError("fitting needs at least two training rows");
  if (y.size() != n) throw InputError("inputs and targets disagree on N");
  if (init.input_dim() != dim) {
    throw InputError("initial hyperparameter dimension does not match inputs");
  }
  init.validate();
  if (opts.restarts < 1) throw InputError("fit needs at least one restart");
  if (opts.max_iters < 1) throw InputError("fit needs at least one iteration");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (!std::isfinite(x(i, j))) {
        throw InputError("training inputs must be finite");
      }
    }
    if (!std::isfinite(y[i])) throw InputError("training targets must be finite");
  }

  const Standardization stdz = compute_standardization(x, y);
  const la::Matrix xs = standardize_inputs(stdz, x);
  la::Vector ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = (y[i] - stdz.y_mean) / stdz.y_scale;

  const int restarts = opts.restarts;
  std::vector<std::vector<double>> starts(static_cast<std::size_t>(restarts));
  starts[0] = hyperparams_to_standardized(init, stdz).to_log();
  for (int k = 1; k < restarts; ++k) {
    starts[static_cast<std::size_t>(k)] =
        draw_start(dim, mix_seed(opts.seed, static_cast<std::uint64_t>(k)),
                   opts);
  }

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  const int threads = std::max(1, opts.threads);
  if (threads == 1 || restarts == 1) {
    for (int k = 0; k < restarts; ++k) {
      outcomes[static_cast<std::size_t>(k)] =
          run_restart(xs, ys, starts[static_cast<std::size_t>(k)], opts);
    }
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    const int workers = std::min(threads, restarts);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int k = next.fetch_add(1); k < restarts; k = next.fetch_add(1)) {
          outcomes[static_cast<std::size_t>(k)] =
              run_restart(xs, ys, starts[static_cast<std::size_t>(k)], opts);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  int best = -1;
  for (int k = 0; k < restarts; ++k) {
    const auto& o = outcomes[static_cast<std::size_t>(k)];
    if (!o.ok) continue;
    if (best < 0 || o.value > outcomes[static_cast<std::size_t>(best)].value) {
      best = k;
    }
  }
  if (best < 0) {
    throw NumericError("every fit restart failed conditioning");
  }

  const auto& winner = outcomes[static_cast<std::size_t>(best)];
  const GpHyperparams hp_std = GpHyperparams::from_log(winner.theta);
  const GpHyperparams hp_raw = hyperparams_to_raw(hp_std, stdz);

  TrainedGp gp = TrainedGp::from_data(x, y, hp_raw, Standardize::yes);
  FitInfo info;
  info.restarts = restarts;
  info.best_restart = best;
  info.iterations = winner.iterations;
  info.objective = winner.value;
  info.grad_inf_norm = winner.grad_inf_norm;
  info.stop_reason = winner.stop_reason;
  gp.set_fit_info(std::move(info));
  return gp;
}

}  // namespace gpsparx::gp
