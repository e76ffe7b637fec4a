#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpsparx/gp/hyperparams.hpp"
#include "gpsparx/la/matrix.hpp"

namespace gpsparx::gp {

// Affine transforms applied to inputs and targets before conditioning.
// Columns with (near) zero spread keep scale 1 so the transform stays
// invertible.
struct Standardization {
  la::Vector x_mean;
  la::Vector x_scale;
  double y_mean = 0.0;
  double y_scale = 1.0;
};

enum class Standardize { yes, no };

// Per-column mean/sd of x plus mean/sd of y (population sd; spreads below
// 1e-12 fall back to scale 1).
Standardization compute_standardization(const la::Matrix& x,
                                        const la::Vector& y);
la::Matrix standardize_inputs(const Standardization& s, const la::Matrix& x);
la::Matrix destandardize_inputs(const Standardization& s, const la::Matrix& z);

// Re-expresses the same model in the other frame: dividing (to standardized)
// or multiplying (to raw) signal/noise by the target scale and each
// lengthscale by its input scale.
GpHyperparams hyperparams_to_standardized(const GpHyperparams& hp_raw,
                                          const Standardization& s);
GpHyperparams hyperparams_to_raw(const GpHyperparams& hp_std,
                                 const Standardization& s);

struct Prediction {
  la::Vector mean;
  la::Vector variance;  // latent variance, de-standardized; excludes noise
};

// Summary of the hyperparameter search that produced a model; carried along
// purely for reporting.
struct FitInfo {
  int restarts = 0;
  int best_restart = -1;
  int iterations = 0;
  double objective = 0.0;
  double grad_inf_norm = 0.0;
  std::string stop_reason;
};

// An exact zero-mean GP regressor conditioned on a fixed design. Holds the
// Cholesky factor and weight vector needed for prediction; hyperparameters
// are stored in the original (raw) units of the data.
class TrainedGp {
 public:
  // Conditions on (x, y) with the given raw-unit hyperparameters. With
  // Standardize::yes the data are centred/scaled first and the
  // hyperparameters converted to the standardized frame internally.
  static TrainedGp from_data(const la::Matrix& x, const la::Vector& y,
                             const GpHyperparams& hp_raw,
                             Standardize standardize);

  TrainedGp(const TrainedGp& other);
  TrainedGp& operator=(const TrainedGp& other);
  TrainedGp(TrainedGp&& other) noexcept;
  TrainedGp& operator=(TrainedGp&& other) noexcept;

  // Posterior mean and latent variance at each row of x_query (raw units).
  Prediction predict(const la::Matrix& x_query) const;

  const GpHyperparams& hyperparams_raw() const { return hp_raw_; }
  const Standardization& standardization() const { return std_; }
  double jitter() const { return jitter_; }
  std::size_t training_rows() const { return x_std_.rows(); }
  std::size_t input_dim() const { return x_std_.cols(); }

  const FitInfo& fit_info() const { return fit_info_; }
  void set_fit_info(FitInfo info) { fit_info_ = std::move(info); }

  // Count of predictions whose raw latent variance fell below -1e-10 before
  // clamping; a diagnostic for conditioning trouble.
  std::uint64_t negative_variance_count() const {
    return negative_variance_count_.load(std::memory_order_relaxed);
  }

  nlohmann::ordered_json to_json() const;
  static TrainedGp from_json(const nlohmann::json& j);

 private:
  TrainedGp() = default;
  void condition();  // fills chol_, alpha_ from x_std_/y_std_/hp_std_

  GpHyperparams hp_raw_;
  GpHyperparams hp_std_;  // same model expressed in the standardized frame
  Standardization std_;
  la::Matrix x_std_;   // standardized training inputs
  la::Vector y_std_;   // standardized targets
  la::Matrix chol_;    // lower Cholesky of K_f + (sn^2 + jitter) I
  la::Vector alpha_;   // chol_^-T chol_^-1 y_std_
  double jitter_ = 0.0;
  FitInfo fit_info_;
  mutable std::atomic<std::uint64_t> negative_variance_count_{0};
};

}  // namespace gpsparx::gp
