#include "gpsparx/farm/layout.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "gpsparx/common/error.hpp"

namespace gpsparx::farm {

FarmLayout::FarmLayout(std::vector<Turbine> turbines, double rotor_diameter,
                       double hub_height)
    : turbines_(std::move(turbines)),
      rotor_diameter_(rotor_diameter),
      hub_height_(hub_height) {
  validate();
}

void FarmLayout::validate() const {
  if (turbines_.empty()) throw InputError("a farm needs at least one turbine");
  if (!(rotor_diameter_ > 0.0)) {
    throw InputError("rotor_diameter must be positive");
  }
  if (!std::isfinite(hub_height_)) throw InputError("hub_height must be finite");
  for (std::size_t i = 0; i < turbines_.size(); ++i) {
    const Turbine& t = turbines_[i];
    if (t.id != static_cast<int>(i) + 1) {
      std::ostringstream msg;
      msg << "turbine ids must be consecutive from 1; position " << i
          << " holds id " << t.id;
      throw InputError(msg.str());
    }
    if (!std::isfinite(t.x) || !std::isfinite(t.y)) {
      throw InputError("turbine coordinates must be finite");
    }
  }
  for (std::size_t i = 0; i < turbines_.size(); ++i) {
    for (std::size_t j = i + 1; j < turbines_.size(); ++j) {
      const double dx = turbines_[i].x - turbines_[j].x;
      const double dy = turbines_[i].y - turbines_[j].y;
      const double dist = std::hypot(dx, dy);
      if (!(dist > rotor_diameter_)) {
        std::ostringstream msg;
        msg << "turbines " << turbines_[i].id << " and " << turbines_[j].id
            << " are " << dist << " m apart; the minimum separation is one "
            << "rotor diameter (" << rotor_diameter_ << " m)";
        throw InputError(msg.str());
      }
    }
  }
}

FarmLayout FarmLayout::regular_grid(int rows, int cols, double spacing,
                                    double rotor_diameter, double hub_height) {
  if (rows < 1 || cols < 1) throw InputError("grid needs rows >= 1, cols >= 1");
  if (!(spacing > 0.0)) throw InputError("grid spacing must be positive");
  std::vector<Turbine> turbines;
  turbines.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  int id = 1;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      turbines.push_back({id++, c * spacing, r * spacing});
    }
  }
  return FarmLayout(std::move(turbines), rotor_diameter, hub_height);
}

const Turbine& FarmLayout::turbine(int id) const {
  if (id < 1 || static_cast<std::size_t>(id) > turbines_.size()) {
    std::ostringstream msg;
    msg << "turbine id " << id << " out of range 1.." << turbines_.size();
    throw InputError(msg.str());
  }
  return turbines_[static_cast<std::size_t>(id) - 1];
}

FarmLayout FarmLayout::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("layout JSON must be an object");
  for (const char* key : {"rotor_diameter", "hub_height", "turbines"}) {
    if (!j.contains(key)) {
      throw InputError(std::string("layout JSON is missing field '") + key + "'");
    }
  }
  if (!j["turbines"].is_array()) {
    throw InputError("layout JSON 'turbines' must be an array");
  }
  std::vector<Turbine> turbines;
  turbines.reserve(j["turbines"].size());
  for (const auto& tj : j["turbines"]) {
    if (!tj.is_object() || !tj.contains("id") || !tj.contains("x") ||
        !tj.contains("y")) {
      throw InputError("each turbine needs 'id', 'x', and 'y'");
    }
    Turbine t;
    t.id = tj["id"].get<int>();
    t.x = tj["x"].get<double>();
    t.y = tj["y"].get<double>();
    turbines.push_back(t);
  }
  return FarmLayout(std::move(turbines), j["rotor_diameter"].get<double>(),
                    j["hub_height"].get<double>());
}

nlohmann::ordered_json FarmLayout::to_json() const {
  nlohmann::ordered_json j;
  j["rotor_diameter"] = rotor_diameter_;
  j["hub_height"] = hub_height_;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Turbine& t : turbines_) {
    arr.push_back({{"id", t.id}, {"x", t.x}, {"y", t.y}});
  }
  j["turbines"] = std::move(arr);
  return j;
}

}  // namespace gpsparx::farm
