#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpsparx/sim/dataset.hpp"

namespace gpsparx::sim {

enum class FreeStreamKind { constant, sweep, random_walk };

FreeStreamKind free_stream_kind_from_string(const std::string& s);
std::string to_string(FreeStreamKind kind);

// Exogenous (u_inf, phi) generator. Three processes share one parameter
// block:
//  - constant:    u = mean_speed, phi = initial_phi at every step.
//  - sweep:       phi sweeps linearly from initial_phi over a full circle
//                 across n_steps (never repeating the start), while
//                 u = mean_speed + speed_amplitude * sin(2pi * speed_cycles *
//                 t / n_steps), floored at 0.
//  - random_walk: u and phi take independent Gaussian steps from
//                 (mean_speed, initial_phi); u is clamped to
//                 [min_speed, max_speed], phi wrapped to [0, 2pi). Step t
//                 reports the state after t + 1 updates. Two standard
//                 normals are consumed every step even when a step sd is
//                 zero, so the stream layout never depends on the
//                 parameters.
struct FreeStreamConfig {
  FreeStreamKind kind = FreeStreamKind::constant;
  double mean_speed = 10.0;
  double initial_phi = 0.0;
  double speed_amplitude = 0.0;  // sweep only
  double speed_cycles = 1.0;     // sweep only
  double speed_step_sd = 0.25;   // random walk only
  double direction_step_sd = 0.0;  // random walk only
  double min_speed = 0.0;          // random walk clamp
  double max_speed = 40.0;         // random walk clamp

  void validate() const;
};

// Deterministic in (config, seed, n_steps); time indices run 0..n_steps-1.
std::vector<WindSample> generate_free_stream(const FreeStreamConfig& config,
                                             std::uint64_t seed,
                                             std::int64_t n_steps);

}  // namespace gpsparx::sim
