#include "gpsparx/sparx/design.hpp"

#include "gpsparx/common/error.hpp"

namespace gpsparx::sparx {

void fill_feature_row(const farm::WakeGraph& graph, int target_id, double u_inf,
                      std::span<const double> speeds, double* row) {
  const std::size_t s = graph.size();
  if (speeds.size() != s) {
    throw InputError("speed vector length does not match the wake graph");
  }
  row[0] = u_inf;
  for (std::size_t i = 0; i < s; ++i) row[i + 1] = 0.0;
  for (int nb : graph.in_neighbors(target_id)) {
    row[static_cast<std::size_t>(nb)] = speeds[static_cast<std::size_t>(nb) - 1];
  }
}

DesignData build_design(const sim::FarmDataset& dataset,
                        const farm::WakeGraph& graph) {
  const std::size_t s = graph.size();
  if (dataset.n_turbines() != s) {
    throw InputError("dataset turbine count does not match the wake graph");
  }
  const std::size_t steps = dataset.n_steps();
  DesignData out;
  out.inputs = la::Matrix(steps * s, s + 1);
  out.targets.resize(steps * s);

  std::size_t r = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    const sim::TimeRecord& rec = dataset.record(t);
    for (std::size_t idx = 0; idx < s; ++idx, ++r) {
      fill_feature_row(graph, static_cast<int>(idx) + 1, rec.wind.u_inf,
                       rec.speeds, out.inputs.row(r));
      out.targets[r] = rec.speeds[idx];
    }
  }
  return out;
}

}  // namespace gpsparx::sparx
