#include "gpsparx/gp/trained_gp.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "gpsparx/common/error.hpp"
#include "gpsparx/gp/kernel.hpp"
#include "gpsparx/gp/likelihood.hpp"
#include "gpsparx/la/linalg.hpp"
#include "gpsparx/simd/kernels.hpp"

namespace gpsparx::gp {
namespace {

constexpr double kTinySpread = 1e-12;
constexpr int kFormatVersion = 1;

Standardization identity_standardization(std::size_t dim) {
  Standardization s;
  s.x_mean.assign(dim, 0.0);
  s.x_scale.assign(dim, 1.0);
  return s;
}

nlohmann::ordered_json vector_json(const la::Vector& v) {
  return nlohmann::ordered_json(v);
}

la::Vector vector_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) {
    throw InputError(std::string("model JSON field '") + what +
                     "' must be an array");
  }
  la::Vector out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) {
      throw InputError(std::string("model JSON field '") + what +
                       "' must contain numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

Standardization compute_standardization(const la::Matrix& x,
                                        const la::Vector& y) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  Standardization s;
  s.x_mean.assign(d, 0.0);
  s.x_scale.assign(d, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x(i, j);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = x(i, j) - mean;
      var += c * c;
    }
    var /= static_cast<double>(n);
    const double sd = std::sqrt(var);
    s.x_mean[j] = mean;
    s.x_scale[j] = sd > kTinySpread ? sd : 1.0;
  }
  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= static_cast<double>(n);
  double y_var = 0.0;
  for (double v : y) {
    const double c = v - y_mean;
    y_var += c * c;
  }
  y_var /= static_cast<double>(n);
  const double y_sd = std::sqrt(y_var);
  s.y_mean = y_mean;
  s.y_scale = y_sd > kTinySpread ? y_sd : 1.0;
  return s;
}

la::Matrix standardize_inputs(const Standardization& s, const la::Matrix& x) {
  if (x.cols() != s.x_mean.size()) {
    throw InputError("standardization dimension does not match inputs");
  }
  la::Matrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      out(i, j) = (x(i, j) - s.x_mean[j]) / s.x_scale[j];
    }
  }
  return out;
}

la::Matrix destandardize_inputs(const Standardization& s, const la::Matrix& z) {
  if (z.cols() != s.x_mean.size()) {
    throw InputError("standardization dimension does not match inputs");
  }
  la::Matrix out(z.rows(), z.cols());
  for (std::size_t i = 0; i < z.rows(); ++i) {
    for (std::size_t j = 0; j < z.cols(); ++j) {
      out(i, j) = z(i, j) * s.x_scale[j] + s.x_mean[j];
    }
  }
  return out;
}

GpHyperparams hyperparams_to_standardized(const GpHyperparams& hp_raw,
                                          const Standardization& s) {
  GpHyperparams hp = hp_raw;
  hp.signal_sd = hp_raw.signal_sd / s.y_scale;
  hp.noise_sd = hp_raw.noise_sd / s.y_scale;
  for (std::size_t j = 0; j < hp.lengthscales.size(); ++j) {
    hp.lengthscales[j] = hp_raw.lengthscales[j] / s.x_scale[j];
  }
  return hp;
}

GpHyperparams hyperparams_to_raw(const GpHyperparams& hp_std,
                                 const Standardization& s) {
  GpHyperparams hp = hp_std;
  hp.signal_sd = hp_std.signal_sd * s.y_scale;
  hp.noise_sd = hp_std.noise_sd * s.y_scale;
  for (std::size_t j = 0; j < hp.lengthscales.size(); ++j) {
    hp.lengthscales[j] = hp_std.lengthscales[j] * s.x_scale[j];
  }
  return hp;
}

TrainedGp TrainedGp::from_data(const la::Matrix& x, const la::Vector& y,
                               const GpHyperparams& hp_raw,
                               Standardize standardize) {
  const std::size_t n = x.rows();
  if (n < 1) throw InputError("a GP needs at least one training row");
  if (y.size() != n) throw InputError("inputs and targets disagree on N");
  if (hp_raw.input_dim() != x.cols()) {
    throw InputError("hyperparameter dimension does not match input columns");
  }
  hp_raw.validate();

  TrainedGp gp;
  gp.hp_raw_ = hp_raw;
  gp.std_ = standardize == Standardize::yes ? compute_standardization(x, y)
                                            : identity_standardization(x.cols());
  gp.hp_std_ = hyperparams_to_standardized(hp_raw, gp.std_);
  gp.x_std_ = standardize_inputs(gp.std_, x);
  gp.y_std_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    gp.y_std_[i] = (y[i] - gp.std_.y_mean) / gp.std_.y_scale;
  }
  gp.condition();
  return gp;
}

void TrainedGp::condition() {
  const la::Matrix z = scale_by_lengthscales(x_std_, hp_std_);
  const la::Matrix k_f = se_gram(z, hp_std_.signal_sd);
  JitteredCholesky chol = cholesky_with_jitter(k_f, hp_std_.noise_sd);
  chol_ = std::move(chol.l);
  jitter_ = chol.jitter;
  alpha_ = y_std_;
  la::solve_cholesky(chol_, alpha_);
}

TrainedGp::TrainedGp(const TrainedGp& other)
    : hp_raw_(other.hp_raw_),
      hp_std_(other.hp_std_),
      std_(other.std_),
      x_std_(other.x_std_),
      y_std_(other.y_std_),
      chol_(other.chol_),
      alpha_(other.alpha_),
      jitter_(other.jitter_),
      fit_info_(other.fit_info_),
      negative_variance_count_(
          other.negative_variance_count_.load(std::memory_order_relaxed)) {}

TrainedGp& TrainedGp::operator=(const TrainedGp& other) {
  if (this == &other) return *this;
  hp_raw_ = other.hp_raw_;
  hp_std_ = other.hp_std_;
  std_ = other.std_;
  x_std_ = other.x_std_;
  y_std_ = other.y_std_;
  chol_ = other.chol_;
  alpha_ = other.alpha_;
  jitter_ = other.jitter_;
  fit_info_ = other.fit_info_;
  negative_variance_count_.store(
      other.negative_variance_count_.load(std::memory_order_relaxed),
      std::memory_order_relaxed);
  return *this;
}

TrainedGp::TrainedGp(TrainedGp&& other) noexcept
    : hp_raw_(std::move(other.hp_raw_)),
      hp_std_(std::move(other.hp_std_)),
      std_(std::move(other.std_)),
      x_std_(std::move(other.x_std_)),
      y_std_(std::move(other.y_std_)),
      chol_(std::move(other.chol_)),
      alpha_(std::move(other.alpha_)),
      jitter_(other.jitter_),
      fit_info_(std::move(other.fit_info_)),
      negative_variance_count_(
          other.negative_variance_count_.load(std::memory_order_relaxed)) {}

TrainedGp& TrainedGp::operator=(TrainedGp&& other) noexcept {
  if (this == &other) return *this;
  hp_raw_ = std::move(other.hp_raw_);
  hp_std_ = std::move(other.hp_std_);
  std_ = std::move(other.std_);
  x_std_ = std::move(other.x_std_);
  y_std_ = std::move(other.y_std_);
  chol_ = std::move(other.chol_);
  alpha_ = std::move(other.alpha_);
  jitter_ = other.jitter_;
  fit_info_ = std::move(other.fit_info_);
  negative_variance_count_.store(
      other.negative_variance_count_.load(std::memory_order_relaxed),
      std::memory_order_relaxed);
  return *this;
}

Prediction TrainedGp::predict(const la::Matrix& x_query) const {
  const auto& kn = simd::active_kernels();
  if (x_query.cols() != x_std_.cols()) {
    throw InputError("query dimension does not match the training inputs");
  }
  const std::size_t m = x_query.rows();
  const std::size_t n = x_std_.rows();

  const la::Matrix xq_std = standardize_inputs(std_, x_query);
  const la::Matrix zq = scale_by_lengthscales(xq_std, hp_std_);
  const la::Matrix z = scale_by_lengthscales(x_std_, hp_std_);
  const la::Matrix k_star = se_cross(zq, z, hp_std_.signal_sd);  // m x n

  const double sf2 = hp_std_.signal_sd * hp_std_.signal_sd;
  const double y_var_scale = std_.y_scale * std_.y_scale;

  Prediction out;
  out.mean.resize(m);
  out.variance.resize(m);
  la::Vector v(n);
  for (std::size_t i = 0; i < m; ++i) {
    const double* ks = k_star.row(i);
    const double mean_std = kn.dot(ks, alpha_.data(), n);
    for (std::size_t j = 0; j < n; ++j) v[j] = ks[j];
    la::solve_lower(chol_, v);
    double var_std = sf2 - kn.dot(v.data(), v.data(), n);
    if (var_std < 0.0) {
      if (var_std < -1e-10) {
        negative_variance_count_.fetch_add(1, std::memory_order_relaxed);
      }
      var_std = 0.0;
    }
    out.mean[i] = mean_std * std_.y_scale + std_.y_mean;
    out.variance[i] = var_std * y_var_scale;
  }
  return out;
}

nlohmann::ordered_json TrainedGp::to_json() const {
  const auto& kn = simd::active_kernels();
  nlohmann::ordered_json j;
  j["format_version"] = kFormatVersion;
  j["model_type"] = "gp_regressor";
  j["hyperparams"] = {{"signal_sd", hp_raw_.signal_sd},
                      {"lengthscales", vector_json(hp_raw_.lengthscales)},
                      {"noise_sd", hp_raw_.noise_sd}};
  j["standardization"] = {{"x_mean", vector_json(std_.x_mean)},
                          {"x_scale", vector_json(std_.x_scale)},
                          {"y_mean", std_.y_mean},
                          {"y_scale", std_.y_scale}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < x_std_.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < x_std_.cols(); ++c) row.push_back(x_std_(i, c));
    rows.push_back(std::move(row));
  }
  j["x_std"] = std::move(rows);
  j["y_std"] = vector_json(y_std_);
  j["alpha_l2"] = std::sqrt(kn.dot(alpha_.data(), alpha_.data(), alpha_.size()));
  j["jitter"] = jitter_;
  j["fit_info"] = {{"restarts", fit_info_.restarts},
                   {"best_restart", fit_info_.best_restart},
                   {"iterations", fit_info_.iterations},
                   {"objective", fit_info_.objective},
                   {"grad_inf_norm", fit_info_.grad_inf_norm},
                   {"stop_reason", fit_info_.stop_reason}};
  return j;
}

TrainedGp TrainedGp::from_json(const nlohmann::json& j) {
  const auto& kn = simd::active_kernels();
  if (!j.is_object()) throw InputError("model JSON must be an object");
  if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
      j["format_version"].get<int>() != kFormatVersion) {
    throw InputError("model JSON has a missing or unsupported format_version");
  }
  for (const char* key :
       {"hyperparams", "standardization", "x_std", "y_std", "alpha_l2"}) {
    if (!j.contains(key)) {
      throw InputError(std::string("model JSON is missing field '") + key + "'");
    }
  }

  const auto& hj = j["hyperparams"];
  GpHyperparams hp;
  if (!hj.is_object() || !hj.contains("signal_sd") ||
      !hj.contains("lengthscales") || !hj.contains("noise_sd")) {
    throw InputError("model JSON hyperparams block is malformed");
  }
  hp.signal_sd = hj["signal_sd"].get<double>();
  hp.lengthscales = vector_from_json(hj["lengthscales"], "lengthscales");
  hp.noise_sd = hj["noise_sd"].get<double>();
  hp.validate();

  const auto& sj = j["standardization"];
  Standardization s;
  s.x_mean = vector_from_json(sj["x_mean"], "x_mean");
  s.x_scale = vector_from_json(sj["x_scale"], "x_scale");
  s.y_mean = sj["y_mean"].get<double>();
  s.y_scale = sj["y_scale"].get<double>();
  if (s.x_mean.size() != s.x_scale.size()) {
    throw InputError("standardization x_mean/x_scale lengths disagree");
  }
  for (double sc : s.x_scale) {
    if (!(sc > 0.0)) throw InputError("standardization scales must be positive");
  }
  if (!(s.y_scale > 0.0)) {
    throw InputError("standardization scales must be positive");
  }

  const auto& xj = j["x_std"];
  if (!xj.is_array() || xj.empty()) {
    throw InputError("model JSON x_std must be a non-empty array of rows");
  }
  const std::size_t n = xj.size();
  const std::size_t dim = s.x_mean.size();
  if (hp.input_dim() != dim) {
    throw InputError("model JSON lengthscales do not match input dimension");
  }
  la::Matrix x_std(n, dim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = xj[i];
    if (!row.is_array() || row.size() != dim) {
      throw InputError("model JSON x_std rows must all have the input dimension");
    }
    for (std::size_t c = 0; c < dim; ++c) x_std(i, c) = row[c].get<double>();
  }
  la::Vector y_std = vector_from_json(j["y_std"], "y_std");
  if (y_std.size() != n) {
    throw InputError("model JSON y_std length does not match x_std rows");
  }

  TrainedGp gp;
  gp.hp_raw_ = hp;
  gp.std_ = s;
  gp.hp_std_ = hyperparams_to_standardized(hp, s);
  gp.x_std_ = std::move(x_std);
  gp.y_std_ = std::move(y_std);
  gp.condition();

  const double expected = j["alpha_l2"].get<double>();
  const double actual =
      std::sqrt(kn.dot(gp.alpha_.data(), gp.alpha_.data(), gp.alpha_.size()));
  const double tol = 1e-10 * std::max(1.0, std::abs(expected));
  if (std::abs(actual - expected) > tol) {
    std::ostringstream msg;
    msg << "model JSON checksum mismatch: alpha_l2 recomputed as " << actual
        << " but file says " << expected;
    throw InputError(msg.str());
  }

  if (j.contains("fit_info") && j["fit_info"].is_object()) {
    const auto& fj = j["fit_info"];
    FitInfo info;
    info.restarts = fj.value("restarts", 0);
    info.best_restart = fj.value("best_restart", -1);
    info.iterations = fj.value("iterations", 0);
    info.objective = fj.value("objective", 0.0);
    info.grad_inf_norm = fj.value("grad_inf_norm", 0.0);
    info.stop_reason = fj.value("stop_reason", std::string());
    gp.fit_info_ = std::move(info);
  }
  return gp;
}

}  // namespace gpsparx::gp
