#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gpsparx/sim/dataset.hpp"
#include "gpsparx/switching/predictor.hpp"

namespace gpsparx::eval {

// One prediction scored against its measurement.
struct ErrorRecord {
  std::int64_t t = 0;
  double phi = 0.0;
  int turbine = 0;  // 1-based id
  double pred_mean = 0.0;
  double pred_var = 0.0;
  double measured = 0.0;
  double sq_err = 0.0;
  int model_index = 0;
};

// Scores every (step, turbine) of the test set through the switching
// predictor; records ordered by (t, turbine id). Throws InputError on an
// empty dataset.
std::vector<ErrorRecord> evaluate_sweep(
    std::span<const sparx::GpSparxModel> models,
    const switching::SectorTable& table, const sim::FarmDataset& test,
    switching::PredictionMode mode);

// Same sweep driven by an arbitrary per-step predictor; lets tests swap in
// stub predictors without building models.
using PredictFn = std::function<switching::SwitchedPrediction(
    const sim::WindSample&, const la::Vector& measured)>;
std::vector<ErrorRecord> evaluate_sweep_with(const sim::FarmDataset& test,
                                             const PredictFn& predict);

struct PolarBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  double mse = 0.0;  // NaN when the bin is empty — never zero-filled
};

struct PolarErrorMap {
  int n_bins = 0;
  std::vector<PolarBin> bins;  // n_bins equal arcs partitioning [0, 2pi)
};

// Groups squared errors by direction bin floor(phi / (2pi/n_bins)).
// Requires n_bins >= 4.
PolarErrorMap bin_polar(const std::vector<ErrorRecord>& records, int n_bins);

// Per-turbine maps, ascending by turbine id.
std::vector<std::pair<int, PolarErrorMap>> bin_polar_per_turbine(
    const std::vector<ErrorRecord>& records, int n_bins,
    std::size_t n_turbines);

struct NmseResult {
  double overall = 0.0;
  std::vector<double> per_turbine;
};

// 100/(N*var(y)) * sum (y - yhat)^2, population variance; 0 is perfect and
// 100 matches predicting the mean. Throws NumericError when the relevant
// measured values have zero variance.
NmseResult nmse(const std::vector<ErrorRecord>& records,
                std::size_t n_turbines);

// MSE inside the arcs within half_width of each training angle versus within
// half_width of each sector boundary.
struct BandComparison {
  double training_band_mse = 0.0;
  std::size_t training_band_count = 0;
  double boundary_band_mse = 0.0;
  std::size_t boundary_band_count = 0;
  double ratio = 0.0;  // boundary / training
  double half_width_rad = 0.0;
};

BandComparison band_comparison(const std::vector<ErrorRecord>& records,
                               const switching::SectorTable& table,
                               double half_width_rad);

// CSV serialization (17-significant-digit floats).
// Records: t,phi,s,pred_mean,pred_var,measured,sq_err,model_index
std::string records_to_csv(const std::vector<ErrorRecord>& records);
// Polar map: bin_lower_rad,bin_upper_rad,count,mse
std::string polar_to_csv(const PolarErrorMap& map);
// Per-turbine polar map: turbine,bin_lower_rad,bin_upper_rad,count,mse
std::string polar_per_turbine_to_csv(
    const std::vector<std::pair<int, PolarErrorMap>>& maps);

}  // namespace gpsparx::eval
