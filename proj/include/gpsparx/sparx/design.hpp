#pragma once

#include <span>

#include "gpsparx/farm/wake_graph.hpp"
#include "gpsparx/la/matrix.hpp"
#include "gpsparx/sim/dataset.hpp"

namespace gpsparx::sparx {

// Inputs/targets for the per-pattern GP. Row r describes one (time, turbine)
// pair: input = [u_inf, masked neighbor speeds (S entries)], target = that
// turbine's measured speed. Rows are time-major, turbines ascending within a
// step.
struct DesignData {
  la::Matrix inputs;   // (n_steps * S) x (S + 1)
  la::Vector targets;  // matching length
};

// Writes [u_inf, w(1,s)*u_1, ..., w(S,s)*u_S] into row (length S+1): entry
// i+1 carries speeds[i-1] only when the graph has edge i -> s, otherwise 0;
// the self entry is always 0.
void fill_feature_row(const farm::WakeGraph& graph, int target_id, double u_inf,
                      std::span<const double> speeds, double* row);

// One design row per (time step, turbine) over the whole dataset, masked by
// the given wake graph.
DesignData build_design(const sim::FarmDataset& dataset,
                        const farm::WakeGraph& graph);

}  // namespace gpsparx::sparx
