#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpsparx/sim/dataset.hpp"
#include "gpsparx/sparx/model.hpp"
#include "gpsparx/switching/sectors.hpp"

namespace gpsparx::switching {

enum class PredictionMode { osa, cascade };

PredictionMode prediction_mode_from_string(const std::string& s);
std::string to_string(PredictionMode mode);

struct SwitchedPrediction {
  la::Vector mean;
  la::Vector variance;
  int model_index = 0;
};

// Routes one sample to the pattern model owning the sample's wind direction
// and runs that model in the requested mode. OSA mode requires the measured
// farm speeds at the same step; cascade mode ignores them.
SwitchedPrediction predict_switched(
    std::span<const sparx::GpSparxModel> models, const SectorTable& table,
    const sim::WindSample& sample, PredictionMode mode,
    std::span<const double> measured = {});

}  // namespace gpsparx::switching
