#pragma once

#include <cstdint>

#include "gpsparx/farm/layout.hpp"
#include "gpsparx/farm/wake_graph.hpp"
#include "gpsparx/sim/dataset.hpp"
#include "gpsparx/sim/free_stream.hpp"

namespace gpsparx::sim {

struct SimulationConfig {
  double thrust_coefficient = 0.8;   // in (0, 1)
  double turbulence_noise_sd = 0.0;  // m/s, additive per turbine per step
  FreeStreamConfig free_stream;
  std::uint64_t rng_seed = 0;
  std::int64_t n_steps = 0;

  void validate() const;
};

// Ground-truth generator: per step, each turbine's speed is the free stream
// scaled by (1 - combined deficit) from its in-wake upstream neighbors, plus
// optional Gaussian turbulence noise (drawn in topological order), floored at
// 0. Deterministic in (layout, geom, config).
FarmDataset simulate(const farm::FarmLayout& layout,
                     const farm::WakeGeometryParams& geom,
                     const SimulationConfig& config);

}  // namespace gpsparx::sim
