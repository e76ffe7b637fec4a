#include "gpsparx/sim/simulator.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gpsparx/common/error.hpp"
#include "gpsparx/common/hash.hpp"
#include "gpsparx/sim/wake_model.hpp"

namespace gpsparx::sim {
namespace {

// Everything about one wind direction that does not depend on speed: the
// visit order and each turbine's combined deficit fraction.
struct DirectionPlan {
  std::vector<int> topo_order;
  std::vector<double> combined_deficit;  // indexed by turbine id - 1
};

DirectionPlan make_plan(const farm::FarmLayout& layout,
                        const farm::WakeGeometryParams& geom, double phi,
                        double ct) {
  const farm::WakeGraph graph = farm::build_wake_graph(layout, phi, geom);
  DirectionPlan plan;
  plan.topo_order = farm::topological_order(graph);
  plan.combined_deficit.assign(layout.size(), 0.0);

  const double c = std::cos(phi);
  const double s = std::sin(phi);
  std::vector<double> along(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const farm::Turbine& t = layout.turbines()[i];
    along[i] = t.x * c + t.y * s;
  }

  std::vector<double> deficits;
  for (std::size_t idx = 0; idx < layout.size(); ++idx) {
    const int id = static_cast<int>(idx) + 1;
    deficits.clear();
    for (int nb : graph.in_neighbors(id)) {
      const double d = along[idx] - along[static_cast<std::size_t>(nb) - 1];
      deficits.push_back(jensen_deficit(d, ct, geom.expansion_coefficient,
                                        layout.rotor_radius()));
    }
    plan.combined_deficit[idx] = combine_deficits(deficits);
  }
  return plan;
}

}  // namespace

void SimulationConfig::validate() const {
  if (!(thrust_coefficient > 0.0 && thrust_coefficient < 1.0)) {
    throw InputError("thrust_coefficient must lie in (0, 1)");
  }
  if (!(turbulence_noise_sd >= 0.0) || !std::isfinite(turbulence_noise_sd)) {
    throw InputError("turbulence_noise_sd must be finite and non-negative");
  }
  if (n_steps < 1) throw InputError("n_steps must be positive");
  free_stream.validate();
}

FarmDataset simulate(const farm::FarmLayout& layout,
                     const farm::WakeGeometryParams& geom,
                     const SimulationConfig& config) {
  config.validate();
  geom.validate();

  const std::vector<WindSample> wind = generate_free_stream(
      config.free_stream, mix_seed(config.rng_seed, 0), config.n_steps);

  std::mt19937_64 noise_rng(mix_seed(config.rng_seed, 1));
  std::normal_distribution<double> unit(0.0, 1.0);
  const bool noisy = config.turbulence_noise_sd > 0.0;

  std::unordered_map<std::uint64_t, DirectionPlan> plans;
  const std::size_t n = layout.size();
  std::vector<TimeRecord> records;
  records.reserve(wind.size());

  for (const WindSample& w : wind) {
    const std::uint64_t key = std::bit_cast<std::uint64_t>(w.phi);
    auto it = plans.find(key);
    if (it == plans.end()) {
      it = plans.emplace(key, make_plan(layout, geom, w.phi,
                                        config.thrust_coefficient))
               .first;
    }
    const DirectionPlan& plan = it->second;

    TimeRecord rec;
    rec.wind = w;
    rec.speeds.assign(n, 0.0);
    for (int id : plan.topo_order) {
      const std::size_t idx = static_cast<std::size_t>(id) - 1;
      double u = w.u_inf * (1.0 - plan.combined_deficit[idx]);
      if (noisy) u += config.turbulence_noise_sd * unit(noise_rng);
      rec.speeds[idx] = std::max(0.0, u);
    }
    records.push_back(std::move(rec));
  }
  return FarmDataset(n, std::move(records));
}

}  // namespace gpsparx::sim
