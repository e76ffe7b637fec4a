#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "gpsparx/farm/layout.hpp"
#include "gpsparx/farm/wake_graph.hpp"
#include "gpsparx/gp/fit.hpp"
#include "gpsparx/gp/trained_gp.hpp"
#include "gpsparx/sim/dataset.hpp"

namespace gpsparx::sparx {

struct SparxPrediction {
  la::Vector mean;      // one entry per turbine, id order
  la::Vector variance;  // latent GP variance per turbine
};

struct SparxTrainOptions {
  gp::FitOptions fit;
  // Full designs grow as n_steps * S; an exact GP on thousands of rows is
  // far past the experiment budget, so training keeps at most this many rows
  // by striding whole time steps evenly (every turbine of a kept step stays).
  std::size_t max_design_rows = 600;
};

// One wake pattern's learned dynamics: the wake graph at the training wind
// direction plus a GP mapping [u_inf, masked neighbor speeds] to a turbine
// speed, shared across all turbines.
class GpSparxModel {
 public:
  GpSparxModel(double pattern_phi, farm::WakeGraph graph, gp::TrainedGp gp);

  double pattern_phi() const { return pattern_phi_; }
  const farm::WakeGraph& graph() const { return graph_; }
  const std::vector<int>& topo_order() const { return topo_order_; }
  const gp::TrainedGp& gp() const { return gp_; }
  std::size_t n_turbines() const { return graph_.size(); }

  nlohmann::ordered_json to_json() const;
  static GpSparxModel from_json(const nlohmann::json& j);

 private:
  double pattern_phi_;
  farm::WakeGraph graph_;
  std::vector<int> topo_order_;
  gp::TrainedGp gp_;
};

// Builds the wake graph at pattern_phi, assembles the (possibly strided)
// design, and fits the GP. Needs at least two time steps.
GpSparxModel train_pattern(const sim::FarmDataset& dataset,
                           const farm::FarmLayout& layout,
                           const farm::WakeGeometryParams& geom,
                           double pattern_phi,
                           const SparxTrainOptions& opts = {});

// One-step-ahead: every turbine predicted from the measured speeds of its
// upstream neighbors at the same step.
SparxPrediction predict_osa(const GpSparxModel& model, double u_inf,
                            std::span<const double> measured);

// Farm-wide from the free stream alone: neighbors take previously predicted
// means, following the wake graph's topological order. Input uncertainty is
// not propagated; variances are the per-row GP variances.
SparxPrediction predict_cascade(const GpSparxModel& model, double u_inf);

}  // namespace gpsparx::sparx
