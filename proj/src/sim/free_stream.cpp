#include "gpsparx/sim/free_stream.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gpsparx/common/angles.hpp"
#include "gpsparx/common/error.hpp"

namespace gpsparx::sim {

FreeStreamKind free_stream_kind_from_string(const std::string& s) {
  if (s == "constant") return FreeStreamKind::constant;
  if (s == "sweep") return FreeStreamKind::sweep;
  if (s == "random_walk") return FreeStreamKind::random_walk;
  throw InputError("unknown free-stream process '" + s +
                   "'; expected constant, sweep, or random_walk");
}

std::string to_string(FreeStreamKind kind) {
  switch (kind) {
    case FreeStreamKind::constant: return "constant";
    case FreeStreamKind::sweep: return "sweep";
    case FreeStreamKind::random_walk: return "random_walk";
  }
  throw InternalError("unhandled free-stream kind");
}

void FreeStreamConfig::validate() const {
  if (!(mean_speed >= 0.0) || !std::isfinite(mean_speed)) {
    throw InputError("mean_speed must be finite and non-negative");
  }
  if (!std::isfinite(initial_phi) || initial_phi < 0.0 ||
      initial_phi >= kTwoPi) {
    throw InputError("initial_phi must lie in [0, 2*pi)");
  }
  if (!(speed_amplitude >= 0.0) || !std::isfinite(speed_amplitude)) {
    throw InputError("speed_amplitude must be finite and non-negative");
  }
  if (!(speed_cycles > 0.0) || !std::isfinite(speed_cycles)) {
    throw InputError("speed_cycles must be positive");
  }
  if (!(speed_step_sd >= 0.0) || !std::isfinite(speed_step_sd)) {
    throw InputError("speed_step_sd must be finite and non-negative");
  }
  if (!(direction_step_sd >= 0.0) || !std::isfinite(direction_step_sd)) {
    throw InputError("direction_step_sd must be finite and non-negative");
  }
  if (!(min_speed >= 0.0) || !(max_speed > min_speed) ||
      !std::isfinite(max_speed)) {
    throw InputError("random-walk clamp needs 0 <= min_speed < max_speed");
  }
}

std::vector<WindSample> generate_free_stream(const FreeStreamConfig& config,
                                             std::uint64_t seed,
                                             std::int64_t n_steps) {
  config.validate();
  if (n_steps < 1) throw InputError("n_steps must be positive");

  std::vector<WindSample> out;
  out.reserve(static_cast<std::size_t>(n_steps));

  switch (config.kind) {
    case FreeStreamKind::constant: {
      for (std::int64_t t = 0; t < n_steps; ++t) {
        out.push_back({t, config.mean_speed, config.initial_phi});
      }
      break;
    }
    case FreeStreamKind::sweep: {
      const double n = static_cast<double>(n_steps);
      for (std::int64_t t = 0; t < n_steps; ++t) {
        const double frac = static_cast<double>(t) / n;
        const double phi = wrap_angle(config.initial_phi + kTwoPi * frac);
        const double u =
            std::max(0.0, config.mean_speed +
                              config.speed_amplitude *
                                  std::sin(kTwoPi * config.speed_cycles * frac));
        out.push_back({t, u, phi});
      }
      break;
    }
    case FreeStreamKind::random_walk: {
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> unit(0.0, 1.0);
      double u = std::clamp(config.mean_speed, config.min_speed,
                            config.max_speed);
      double phi = config.initial_phi;
      for (std::int64_t t = 0; t < n_steps; ++t) {
        const double du = unit(rng);
        const double dphi = unit(rng);
        u = std::clamp(u + config.speed_step_sd * du, config.min_speed,
                       config.max_speed);
        phi = wrap_angle(phi + config.direction_step_sd * dphi);
        out.push_back({t, u, phi});
      }
      break;
    }
  }
  return out;
}

}  // namespace gpsparx::sim
