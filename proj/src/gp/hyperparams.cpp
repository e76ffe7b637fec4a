#include "gpsparx/gp/hyperparams.hpp"

#include <cmath>

#include "gpsparx/common/error.hpp"

namespace gpsparx::gp {

void GpHyperparams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(signal_sd)) {
    throw InputError("hyperparams: signal_sd must be finite and > 0");
  }
  if (!positive(noise_sd)) {
    throw InputError("hyperparams: noise_sd must be finite and > 0");
  }
  if (lengthscales.empty()) {
    throw InputError("hyperparams: need at least one lengthscale");
  }
  for (double l : lengthscales) {
    if (!positive(l)) {
      throw InputError("hyperparams: lengthscales must be finite and > 0");
    }
  }
}

std::vector<double> GpHyperparams::to_log() const {
  std::vector<double> packed;
  packed.reserve(lengthscales.size() + 2);
  packed.push_back(std::log(signal_sd));
  for (double l : lengthscales) packed.push_back(std::log(l));
  packed.push_back(std::log(noise_sd));
  return packed;
}

GpHyperparams GpHyperparams::from_log(const std::vector<double>& packed) {
  GpHyperparams hp;
  hp.signal_sd = std::exp(packed.front());
  hp.lengthscales.assign(packed.size() - 2, 0.0);
  for (std::size_t d = 0; d < hp.lengthscales.size(); ++d) {
    hp.lengthscales[d] = std::exp(packed[d + 1]);
  }
  hp.noise_sd = std::exp(packed.back());
  return hp;
}

GpHyperparams GpHyperparams::isotropic(std::size_t dim, double signal_sd,
                                       double lengthscale, double noise_sd) {
  GpHyperparams hp;
  hp.signal_sd = signal_sd;
  hp.lengthscales.assign(dim, lengthscale);
  hp.noise_sd = noise_sd;
  return hp;
}

}  // namespace gpsparx::gp
