#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace gpsparx::farm {

struct Turbine {
  int id = 0;  // 1-based, consecutive
  double x = 0.0;
  double y = 0.0;
};

// The fixed spatial substrate: turbine positions plus shared rotor geometry.
// hub_height is carried as metadata only.
class FarmLayout {
 public:
  FarmLayout(std::vector<Turbine> turbines, double rotor_diameter,
             double hub_height);

  // rows x cols grid with the given spacing, turbine 1 at the origin,
  // ids increasing along +x first, then +y.
  static FarmLayout regular_grid(int rows, int cols, double spacing,
                                 double rotor_diameter, double hub_height);

  static FarmLayout from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;

  std::size_t size() const { return turbines_.size(); }
  const std::vector<Turbine>& turbines() const { return turbines_; }
  const Turbine& turbine(int id) const;  // 1-based
  double rotor_diameter() const { return rotor_diameter_; }
  double rotor_radius() const { return 0.5 * rotor_diameter_; }
  double hub_height() const { return hub_height_; }

 private:
  void validate() const;

  std::vector<Turbine> turbines_;
  double rotor_diameter_ = 0.0;
  double hub_height_ = 0.0;
};

}  // namespace gpsparx::farm
