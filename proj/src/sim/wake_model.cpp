#include "gpsparx/sim/wake_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gpsparx/common/error.hpp"

namespace gpsparx::sim {

double jensen_deficit(double d, double ct, double k, double rotor_radius) {
  if (!(ct > 0.0 && ct < 1.0)) {
    std::ostringstream msg;
    msg << "thrust coefficient must lie in (0, 1); got " << ct;
    throw InputError(msg.str());
  }
  if (!(d > 0.0)) throw InputError("downstream distance must be positive");
  if (!(rotor_radius > 0.0)) throw InputError("rotor radius must be positive");
  if (!(k >= 0.0)) throw InputError("wake decay must be non-negative");

  const double ratio = 1.0 + k * d / rotor_radius;
  const double deficit = (1.0 - std::sqrt(1.0 - ct)) / (ratio * ratio);
  constexpr double kJustBelowOne = 0x1.fffffffffffffp-1;
  return std::clamp(deficit, 0.0, kJustBelowOne);
}

double combine_deficits(std::span<const double> deficits) {
  double sum_sq = 0.0;
  for (double d : deficits) sum_sq += d * d;
  return std::min(std::sqrt(sum_sq), kMaxCombinedDeficit);
}

}  // namespace gpsparx::sim
