#include "gpsparx/switching/sectors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "gpsparx/common/angles.hpp"
#include "gpsparx/common/error.hpp"

namespace gpsparx::switching {
namespace {

constexpr int kFormatVersion = 1;

bool strictly_inside(double lower, double upper, double angle) {
  if (lower < upper) return angle > lower && angle < upper;
  // Sector wraps through 0.
  return angle > lower || angle < upper;
}

}  // namespace

SectorTable SectorTable::build(const std::vector<double>& training_angles) {
  if (training_angles.empty()) {
    throw InputError("at least one training angle is required");
  }
  for (double a : training_angles) {
    if (!(a >= 0.0 && a < kTwoPi)) {
      std::ostringstream msg;
      msg << "training angles must lie in [0, 2*pi); got " << a;
      throw InputError(msg.str());
    }
  }

  SectorTable table;
  table.training_angles_ = training_angles;
  const std::size_t n = training_angles.size();

  if (n == 1) {
    table.sectors_ = {{0, training_angles[0], 0.0, kTwoPi}};
    table.boundaries_ = {0.0};
    return table;
  }

  // Sort angles, remembering the caller's indices.
  std::vector<std::pair<double, int>> sorted;
  sorted.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    sorted.emplace_back(training_angles[i], static_cast<int>(i));
  }
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < n; ++i) {
    if (sorted[i].first == sorted[i - 1].first) {
      std::ostringstream msg;
      msg << "duplicate training angle " << sorted[i].first;
      throw InputError(msg.str());
    }
  }

  // Midpoint of the arc from sorted angle j counterclockwise to the next
  // sorted angle (the arc containing no other training angle).
  std::vector<double> mid(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = sorted[j].first;
    const double b = sorted[(j + 1) % n].first;
    const double gap = j + 1 == n ? b + kTwoPi - a : b - a;
    mid[j] = wrap_angle(a + 0.5 * gap);
  }

  // Sorted angle j owns the arc from the midpoint below it to the midpoint
  // above it.
  table.sectors_.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Sector s;
    s.model_index = sorted[j].second;
    s.training_angle = sorted[j].first;
    s.lower = mid[(j + n - 1) % n];
    s.upper = mid[j];
    table.sectors_.push_back(s);
  }
  std::sort(table.sectors_.begin(), table.sectors_.end(),
            [](const Sector& a, const Sector& b) { return a.lower < b.lower; });

  table.boundaries_.reserve(n);
  for (const Sector& s : table.sectors_) table.boundaries_.push_back(s.lower);
  for (std::size_t j = 1; j < n; ++j) {
    if (table.boundaries_[j] == table.boundaries_[j - 1]) {
      throw InputError("training angles are too close to separate into sectors");
    }
  }
  for (const Sector& s : table.sectors_) {
    if (!strictly_inside(s.lower, s.upper, s.training_angle)) {
      throw InputError("training angles are too close to separate into sectors");
    }
  }
  return table;
}

int SectorTable::select(double phi) const {
  if (!(phi >= 0.0 && phi < kTwoPi)) {
    std::ostringstream msg;
    msg << "direction must lie in [0, 2*pi); got " << phi;
    throw InputError(msg.str());
  }
  // boundaries_ is ascending; phi belongs to the last boundary <= phi, or —
  // below the first boundary — to the sector wrapping through 0.
  auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), phi);
  const std::size_t idx =
      it == boundaries_.begin()
          ? sectors_.size() - 1
          : static_cast<std::size_t>(std::distance(boundaries_.begin(), it)) - 1;
  return sectors_[idx].model_index;
}

nlohmann::ordered_json SectorTable::to_json() const {
  nlohmann::ordered_json j;
  j["format_version"] = kFormatVersion;
  j["training_angles"] = nlohmann::ordered_json(training_angles_);
  nlohmann::ordered_json sectors = nlohmann::ordered_json::array();
  for (const Sector& s : sectors_) {
    sectors.push_back({{"model_index", s.model_index},
                       {"training_angle", s.training_angle},
                       {"lower", s.lower},
                       {"upper", s.upper}});
  }
  j["sectors"] = std::move(sectors);
  return j;
}

SectorTable SectorTable::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("format_version") ||
      !j.contains("training_angles")) {
    throw InputError("sector table JSON must carry format_version and "
                     "training_angles");
  }
  if (j["format_version"].get<int>() != kFormatVersion) {
    throw InputError("sector table JSON has an unsupported format_version");
  }
  std::vector<double> angles;
  for (const auto& a : j["training_angles"]) angles.push_back(a.get<double>());
  SectorTable table = build(angles);

  // The stored sectors are derived data; verify them against the rebuild so
  // a hand-edited file cannot smuggle in an inconsistent partition.
  if (j.contains("sectors")) {
    const auto& sj = j["sectors"];
    if (!sj.is_array() || sj.size() != table.sectors_.size()) {
      throw InputError("sector table JSON sectors do not match its angles");
    }
    for (std::size_t i = 0; i < table.sectors_.size(); ++i) {
      const Sector& s = table.sectors_[i];
      if (sj[i].value("model_index", -1) != s.model_index ||
          sj[i].value("lower", -1.0) != s.lower ||
          sj[i].value("upper", -1.0) != s.upper) {
        throw InputError("sector table JSON sectors do not match its angles");
      }
    }
  }
  return table;
}

}  // namespace gpsparx::switching
