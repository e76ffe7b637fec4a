#include "gpsparx/sparx/model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gpsparx/common/angles.hpp"
#include "gpsparx/common/error.hpp"
#include "gpsparx/sparx/design.hpp"

namespace gpsparx::sparx {
namespace {

constexpr int kFormatVersion = 1;

// Evenly strided subset of 0..total-1 of size keep (keep <= total), always
// containing index 0.
std::vector<std::size_t> strided_indices(std::size_t total, std::size_t keep) {
  std::vector<std::size_t> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    out.push_back(i * total / keep);
  }
  return out;
}

double column_sd(const la::Matrix& m, std::size_t col) {
  const std::size_t n = m.rows();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += m(i, col);
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = m(i, col) - mean;
    var += c * c;
  }
  return std::sqrt(var / static_cast<double>(n));
}

double vector_sd(const la::Vector& v) {
  double mean = 0.0;
  for (double e : v) mean += e;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double e : v) {
    const double c = e - mean;
    var += c * c;
  }
  return std::sqrt(var / static_cast<double>(v.size()));
}

}  // namespace

GpSparxModel::GpSparxModel(double pattern_phi, farm::WakeGraph graph,
                           gp::TrainedGp gp)
    : pattern_phi_(pattern_phi),
      graph_(std::move(graph)),
      topo_order_(farm::topological_order(graph_)),
      gp_(std::move(gp)) {
  if (graph_.phi() != pattern_phi_) {
    throw InternalError("wake graph direction must equal the pattern direction");
  }
  if (gp_.input_dim() != graph_.size() + 1) {
    throw InternalError("pattern GP must have input dimension S + 1");
  }
}

GpSparxModel train_pattern(const sim::FarmDataset& dataset,
                           const farm::FarmLayout& layout,
                           const farm::WakeGeometryParams& geom,
                           double pattern_phi, const SparxTrainOptions& opts) {
  if (dataset.n_turbines() != layout.size()) {
    throw InputError("dataset turbine count does not match the layout");
  }
  if (dataset.n_steps() < 2) {
    throw InputError("pattern training needs at least two time steps");
  }
  if (opts.max_design_rows < 2) {
    throw InputError("max_design_rows must be at least 2");
  }

  farm::WakeGraph graph = farm::build_wake_graph(layout, pattern_phi, geom);

  const std::size_t s = layout.size();
  const std::size_t total_steps = dataset.n_steps();
  // Keep the largest stride-subsampled step count whose design matrix stays
  // within max_design_rows; never fewer than two steps, or target variance
  // (and therefore the moment-based initial guess) degenerates.
  const std::size_t keep_steps =
      std::clamp<std::size_t>(opts.max_design_rows / s, std::size_t{2},
                              total_steps);

  sim::FarmDataset strided = [&] {
    if (keep_steps == total_steps) return dataset;
    std::vector<sim::TimeRecord> kept;
    kept.reserve(keep_steps);
    for (std::size_t idx : strided_indices(total_steps, keep_steps)) {
      kept.push_back(dataset.record(idx));
    }
    return sim::FarmDataset(s, std::move(kept));
  }();

  DesignData design = build_design(strided, graph);

  // Moment-based starting point in raw units; the optimizer standardizes, so
  // this is roughly (1, 2, ..., 2, 0.1) in its own frame.
  const double y_sd = vector_sd(design.targets);
  gp::GpHyperparams init;
  init.signal_sd = std::max(y_sd, 1e-3);
  init.noise_sd = std::max(0.1 * y_sd, 1e-4);
  init.lengthscales.resize(s + 1);
  for (std::size_t d = 0; d <= s; ++d) {
    const double sd = column_sd(design.inputs, d);
    init.lengthscales[d] = sd > 1e-12 ? 2.0 * sd : 1.0;
  }

  gp::TrainedGp gp = gp::fit(design.inputs, design.targets, init, opts.fit);
  return GpSparxModel(pattern_phi, std::move(graph), std::move(gp));
}

SparxPrediction predict_osa(const GpSparxModel& model, double u_inf,
                            std::span<const double> measured) {
  const std::size_t s = model.n_turbines();
  if (measured.size() != s) {
    throw InputError("measured speed vector length does not match the farm");
  }
  la::Matrix rows(s, s + 1);
  for (std::size_t idx = 0; idx < s; ++idx) {
    fill_feature_row(model.graph(), static_cast<int>(idx) + 1, u_inf, measured,
                     rows.row(idx));
  }
  gp::Prediction p = model.gp().predict(rows);
  return {std::move(p.mean), std::move(p.variance)};
}

SparxPrediction predict_cascade(const GpSparxModel& model, double u_inf) {
  const std::size_t s = model.n_turbines();
  SparxPrediction out;
  out.mean.assign(s, 0.0);
  out.variance.assign(s, 0.0);
  la::Matrix row(1, s + 1);
  for (int id : model.topo_order()) {
    fill_feature_row(model.graph(), id, u_inf, out.mean, row.row(0));
    gp::Prediction p = model.gp().predict(row);
    const std::size_t idx = static_cast<std::size_t>(id) - 1;
    out.mean[idx] = p.mean[0];
    out.variance[idx] = p.variance[0];
  }
  return out;
}

nlohmann::ordered_json GpSparxModel::to_json() const {
  nlohmann::ordered_json j;
  j["format_version"] = kFormatVersion;
  j["model_type"] = "gp_sparx_pattern";
  j["pattern_phi"] = pattern_phi_;
  j["n_turbines"] = graph_.size();
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& [f, t] : graph_.edges()) {
    edges.push_back(nlohmann::ordered_json::array({f, t}));
  }
  j["wake_edges"] = std::move(edges);
  j["gp"] = gp_.to_json();
  return j;
}

GpSparxModel GpSparxModel::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("pattern model JSON must be an object");
  for (const char* key :
       {"format_version", "pattern_phi", "n_turbines", "wake_edges", "gp"}) {
    if (!j.contains(key)) {
      throw InputError(std::string("pattern model JSON is missing field '") +
                       key + "'");
    }
  }
  if (j["format_version"].get<int>() != kFormatVersion) {
    throw InputError("pattern model JSON has an unsupported format_version");
  }
  const double phi = j["pattern_phi"].get<double>();
  if (!(phi >= 0.0 && phi < kTwoPi)) {
    throw InputError("pattern_phi must lie in [0, 2*pi)");
  }
  const std::size_t s = j["n_turbines"].get<std::size_t>();
  if (s == 0) throw InputError("pattern model needs at least one turbine");

  gp::TrainedGp gp = gp::TrainedGp::from_json(j["gp"]);
  if (gp.input_dim() != s + 1) {
    throw InputError("pattern model GP dimension must be S + 1");
  }

  // The graph's own invariants (zero diagonal, acyclicity) police the edge
  // list; a violation there means the JSON is inconsistent, not that the
  // library broke.
  farm::WakeGraph graph(phi, s);
  try {
    for (const auto& e : j["wake_edges"]) {
      if (!e.is_array() || e.size() != 2) {
        throw InputError("wake_edges entries must be [from, to] pairs");
      }
      const int from = e[0].get<int>();
      const int to = e[1].get<int>();
      if (from < 1 || to < 1 || static_cast<std::size_t>(from) > s ||
          static_cast<std::size_t>(to) > s) {
        throw InputError("wake_edges entry out of range");
      }
      graph.add_edge(from, to);
    }
    return GpSparxModel(phi, std::move(graph), std::move(gp));
  } catch (const InternalError& e) {
    throw InputError(std::string("pattern model JSON is inconsistent: ") +
                     e.what());
  }
}

}  // namespace gpsparx::sparx
