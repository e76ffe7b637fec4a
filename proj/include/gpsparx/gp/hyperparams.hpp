#pragma once

#include <cstddef>
#include <vector>

namespace gpsparx::gp {

// Squared-exponential kernel parameters with one lengthscale per input
// dimension (ARD). All entries are strictly positive; the optimizer works on
// their logs so positivity never has to be clamped.
struct GpHyperparams {
  double signal_sd = 1.0;
  std::vector<double> lengthscales;
  double noise_sd = 0.1;

  std::size_t input_dim() const { return lengthscales.size(); }

  // Throws InputError unless every field is finite and > 0.
  void validate() const;

  // Log-space packing used by the optimizer: [log sf, log l_1..l_D, log sn].
  std::vector<double> to_log() const;
  static GpHyperparams from_log(const std::vector<double>& packed);

  static GpHyperparams isotropic(std::size_t dim, double signal_sd = 1.0,
                                 double lengthscale = 1.0,
                                 double noise_sd = 0.1);

  bool operator==(const GpHyperparams&) const = default;
};

}  // namespace gpsparx::gp
