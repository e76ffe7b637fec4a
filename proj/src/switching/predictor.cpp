#include "gpsparx/switching/predictor.hpp"

#include <utility>

#include "gpsparx/common/angles.hpp"
#include "gpsparx/common/error.hpp"

namespace gpsparx::switching {

PredictionMode prediction_mode_from_string(const std::string& s) {
  if (s == "osa") return PredictionMode::osa;
  if (s == "cascade") return PredictionMode::cascade;
  throw InputError("unknown prediction mode '" + s +
                   "'; expected osa or cascade");
}

std::string to_string(PredictionMode mode) {
  switch (mode) {
    case PredictionMode::osa: return "osa";
    case PredictionMode::cascade: return "cascade";
  }
  throw InternalError("unhandled prediction mode");
}

SwitchedPrediction predict_switched(std::span<const sparx::GpSparxModel> models,
                                    const SectorTable& table,
                                    const sim::WindSample& sample,
                                    PredictionMode mode,
                                    std::span<const double> measured) {
  if (models.size() != table.n_sectors()) {
    throw InputError("model list length does not match the sector table");
  }
  const int idx = table.select(wrap_angle(sample.phi));
  const sparx::GpSparxModel& model = models[static_cast<std::size_t>(idx)];

  sparx::SparxPrediction p;
  if (mode == PredictionMode::osa) {
    if (measured.size() != model.n_turbines()) {
      throw InputError(
          "one-step-ahead prediction needs measured speeds for every turbine");
    }
    p = sparx::predict_osa(model, sample.u_inf, measured);
  } else {
    p = sparx::predict_cascade(model, sample.u_inf);
  }
  return {std::move(p.mean), std::move(p.variance), idx};
}

}  // namespace gpsparx::switching
