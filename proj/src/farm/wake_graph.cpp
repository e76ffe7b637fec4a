#include "gpsparx/farm/wake_graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "gpsparx/common/angles.hpp"
#include "gpsparx/common/error.hpp"

namespace gpsparx::farm {

void WakeGeometryParams::validate() const {
  if (!(expansion_coefficient > 0.0) || !std::isfinite(expansion_coefficient)) {
    throw InputError("expansion_coefficient must be positive and finite");
  }
  if (!(max_wake_length > 0.0) || !std::isfinite(max_wake_length)) {
    throw InputError("max_wake_length must be positive and finite");
  }
  if (!(near_wake_offset >= 0.0) || !std::isfinite(near_wake_offset)) {
    throw InputError("near_wake_offset must be non-negative and finite");
  }
}

WakeGraph::WakeGraph(double phi, std::size_t n_turbines)
    : phi_(phi), n_(n_turbines), w_(n_turbines * n_turbines, 0), in_(n_turbines) {}

void WakeGraph::add_edge(int from, int to) {
  if (from == to) throw InternalError("wake graph must keep a zero diagonal");
  std::uint8_t& cell = w_[index(from, to)];
  if (cell) return;
  cell = 1;
  ++edge_count_;
  auto& nbrs = in_[static_cast<std::size_t>(to) - 1];
  nbrs.insert(std::lower_bound(nbrs.begin(), nbrs.end(), from), from);
}

std::vector<std::pair<int, int>> WakeGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (std::size_t f = 0; f < n_; ++f) {
    for (std::size_t t = 0; t < n_; ++t) {
      if (w_[f * n_ + t]) {
        out.emplace_back(static_cast<int>(f) + 1, static_cast<int>(t) + 1);
      }
    }
  }
  return out;
}

std::string WakeGraph::to_edge_csv() const {
  std::ostringstream os;
  os << "from,to\n";
  for (const auto& [f, t] : edges()) os << f << "," << t << "\n";
  return os.str();
}

WakeGraph build_wake_graph(const FarmLayout& layout, double phi,
                           const WakeGeometryParams& params) {
  if (!(phi >= 0.0 && phi < kTwoPi)) {
    std::ostringstream msg;
    msg << "wind direction must lie in [0, 2*pi); got " << phi;
    throw InputError(msg.str());
  }
  params.validate();

  const std::size_t n = layout.size();
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double r0 = layout.rotor_radius();

  // Rotate into the wind frame once: a = along-wind, b = crosswind.
  std::vector<double> a(n), b(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Turbine& t = layout.turbines()[idx];
    a[idx] = t.x * c + t.y * s;
    b[idx] = -t.x * s + t.y * c;
  }

  WakeGraph graph(phi, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = a[j] - a[i];
      if (!(d > params.near_wake_offset) || !(d <= params.max_wake_length)) {
        continue;
      }
      const double cross = std::abs(b[j] - b[i]);
      if (cross <= r0 + params.expansion_coefficient * d) {
        graph.add_edge(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
      }
    }
  }
  return graph;
}

std::vector<int> topological_order(const WakeGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<int> in_degree(n, 0);
  for (std::size_t t = 0; t < n; ++t) {
    in_degree[t] = static_cast<int>(graph.in_neighbors(static_cast<int>(t) + 1).size());
  }
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (std::size_t t = 0; t < n; ++t) {
    if (in_degree[t] == 0) ready.push(static_cast<int>(t) + 1);
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    const int id = ready.top();
    ready.pop();
    order.push_back(id);
    for (std::size_t t = 0; t < n; ++t) {
      const int to = static_cast<int>(t) + 1;
      if (graph.has_edge(id, to) && --in_degree[t] == 0) ready.push(to);
    }
  }
  if (order.size() != n) {
    throw InternalError("wake graph contains a cycle; construction should forbid this");
  }
  return order;
}

}  // namespace gpsparx::farm
