#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpsparx/la/matrix.hpp"

namespace gpsparx::sim {

// One draw of the exogenous conditions: free-stream speed (m/s) and the
// direction the wind blows toward (radians, in [0, 2pi)).
struct WindSample {
  std::int64_t t = 0;
  double u_inf = 0.0;
  double phi = 0.0;
};

struct TimeRecord {
  WindSample wind;
  la::Vector speeds;  // one entry per turbine, id order
};

// Time-ordered farm measurements: free-stream conditions plus per-turbine
// speeds. Immutable after construction; construction validates that time
// indices strictly increase, speeds are non-negative, and every record has
// the same turbine count.
class FarmDataset {
 public:
  FarmDataset(std::size_t n_turbines, std::vector<TimeRecord> records);

  std::size_t n_turbines() const { return n_turbines_; }
  std::size_t n_steps() const { return records_.size(); }
  const std::vector<TimeRecord>& records() const { return records_; }
  const TimeRecord& record(std::size_t i) const { return records_[i]; }

  // Header `t,phi,u_inf,u_1,...,u_S`; floats carry 17 significant digits so
  // the round trip is exact.
  std::string to_csv() const;
  static FarmDataset from_csv(const std::string& text);

 private:
  std::size_t n_turbines_;
  std::vector<TimeRecord> records_;
};

}  // namespace gpsparx::sim
