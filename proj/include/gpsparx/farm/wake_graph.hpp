#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpsparx/farm/layout.hpp"

namespace gpsparx::farm {

// Linear-cone wake region: downstream reach and growth of the wake radius
// with distance.
struct WakeGeometryParams {
  double expansion_coefficient = 0.075;  // wake radius growth per metre
  double max_wake_length = 0.0;          // metres
  double near_wake_offset = 0.0;         // metres; edges need d strictly beyond

  void validate() const;
};

// Direction-dependent adjacency: edge (i -> s) means s sits in the wake cone
// of i for the wind direction this graph was built at. Ids are 1-based.
class WakeGraph {
 public:
  WakeGraph(double phi, std::size_t n_turbines);

  double phi() const { return phi_; }
  std::size_t size() const { return n_; }

  bool has_edge(int from, int to) const {
    return w_[index(from, to)] != 0;
  }
  // Upstream neighbors of `to`, ascending by id.
  const std::vector<int>& in_neighbors(int to) const {
    return in_[static_cast<std::size_t>(to) - 1];
  }
  std::size_t edge_count() const { return edge_count_; }

  // Sorted (from, to) pairs.
  std::vector<std::pair<int, int>> edges() const;
  // Edge-list CSV with header `from,to`.
  std::string to_edge_csv() const;

  void add_edge(int from, int to);

 private:
  std::size_t index(int from, int to) const {
    return (static_cast<std::size_t>(from) - 1) * n_ +
           (static_cast<std::size_t>(to) - 1);
  }

  double phi_;
  std::size_t n_;
  std::vector<std::uint8_t> w_;  // dense row-major bitmap
  std::vector<std::vector<int>> in_;
  std::size_t edge_count_ = 0;
};

// Builds the adjacency for wind blowing toward phi (radians, counterclockwise
// from +x, in [0, 2pi)). In the frame rotated so the wind runs along +x, an
// edge (i -> s) exists iff near_wake_offset < d <= max_wake_length for the
// downstream distance d, and the crosswind offset is within rotor_radius +
// expansion_coefficient * d (boundaries count as inside).
WakeGraph build_wake_graph(const FarmLayout& layout, double phi,
                           const WakeGeometryParams& params);

// Ids ordered so every edge points forward; ties broken by ascending id.
// Throws InternalError if a cycle is found (construction forbids one).
std::vector<int> topological_order(const WakeGraph& graph);

}  // namespace gpsparx::farm
