#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

namespace gpsparx::switching {

// One half-open arc [lower, upper) of wind directions served by a single
// pattern model. `upper` is stored wrapped to [0, 2pi); the sector that
// crosses 0 therefore has upper < lower numerically. model_index refers to
// the caller's original training-angle order.
struct Sector {
  int model_index = 0;
  double training_angle = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// Partition of the direction circle with one sector per training angle,
// boundaries at the circular midpoints between circularly consecutive
// angles. A single training angle yields the full circle [0, 2pi).
class SectorTable {
 public:
  // Angles in [0, 2pi), distinct; duplicates are rejected.
  static SectorTable build(const std::vector<double>& training_angles);

  // Index (into the original training-angle list) of the sector containing
  // phi. A boundary value belongs to the sector it opens (lower-bound
  // inclusive). phi must lie in [0, 2pi).
  int select(double phi) const;

  std::size_t n_sectors() const { return sectors_.size(); }
  // Sectors ordered by lower bound.
  const std::vector<Sector>& sectors() const { return sectors_; }
  const std::vector<double>& training_angles() const { return training_angles_; }
  // Sorted boundary angles (one per sector; empty-free). For n = 1 this is
  // {0}.
  const std::vector<double>& boundaries() const { return boundaries_; }

  nlohmann::ordered_json to_json() const;
  static SectorTable from_json(const nlohmann::json& j);

 private:
  SectorTable() = default;

  std::vector<double> training_angles_;  // original order
  std::vector<Sector> sectors_;          // ordered by lower bound
  std::vector<double> boundaries_;       // = sectors_[i].lower, ascending
};

}  // namespace gpsparx::switching
