#include "gpsparx/eval/evaluate.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gpsparx/common/angles.hpp"
#include "gpsparx/common/error.hpp"
#include "gpsparx/io/text.hpp"

namespace gpsparx::eval {
namespace {

std::vector<ErrorRecord> sweep_impl(const sim::FarmDataset& test,
                                    const PredictFn& predict) {
  if (test.n_steps() == 0) {
    throw InputError("evaluation needs a non-empty test dataset");
  }
  const std::size_t s = test.n_turbines();
  std::vector<ErrorRecord> out;
  out.reserve(test.n_steps() * s);
  for (const sim::TimeRecord& rec : test.records()) {
    const switching::SwitchedPrediction p = predict(rec.wind, rec.speeds);
    if (p.mean.size() != s || p.variance.size() != s) {
      throw InternalError("predictor returned the wrong farm width");
    }
    for (std::size_t idx = 0; idx < s; ++idx) {
      ErrorRecord r;
      r.t = rec.wind.t;
      r.phi = rec.wind.phi;
      r.turbine = static_cast<int>(idx) + 1;
      r.pred_mean = p.mean[idx];
      r.pred_var = p.variance[idx];
      r.measured = rec.speeds[idx];
      const double diff = r.pred_mean - r.measured;
      r.sq_err = diff * diff;
      r.model_index = p.model_index;
      out.push_back(r);
    }
  }
  return out;
}

double mean_sq_err(const std::vector<ErrorRecord>& records,
                   const std::vector<double>& centers, double half_width,
                   std::size_t* count_out) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const ErrorRecord& r : records) {
    for (double c : centers) {
      if (circular_distance(r.phi, c) <= half_width) {
        sum += r.sq_err;
        ++count;
        break;
      }
    }
  }
  *count_out = count;
  return count == 0 ? std::numeric_limits<double>::quiet_NaN()
                    : sum / static_cast<double>(count);
}

}  // namespace

std::vector<ErrorRecord> evaluate_sweep(
    std::span<const sparx::GpSparxModel> models,
    const switching::SectorTable& table, const sim::FarmDataset& test,
    switching::PredictionMode mode) {
  return sweep_impl(test, [&](const sim::WindSample& w, const la::Vector& u) {
    return switching::predict_switched(models, table, w, mode, u);
  });
}

std::vector<ErrorRecord> evaluate_sweep_with(const sim::FarmDataset& test,
                                             const PredictFn& predict) {
  return sweep_impl(test, predict);
}

PolarErrorMap bin_polar(const std::vector<ErrorRecord>& records, int n_bins) {
  if (n_bins < 4) throw InputError("polar binning needs n_bins >= 4");
  PolarErrorMap map;
  map.n_bins = n_bins;
  map.bins.resize(static_cast<std::size_t>(n_bins));
  const double width = kTwoPi / n_bins;
  for (int b = 0; b < n_bins; ++b) {
    map.bins[static_cast<std::size_t>(b)].lower = b * width;
    map.bins[static_cast<std::size_t>(b)].upper =
        b + 1 == n_bins ? kTwoPi : (b + 1) * width;
  }
  std::vector<double> sums(static_cast<std::size_t>(n_bins), 0.0);
  for (const ErrorRecord& r : records) {
    if (!(r.phi >= 0.0 && r.phi < kTwoPi)) {
      throw InputError("record direction outside [0, 2*pi)");
    }
    auto b = static_cast<std::size_t>(r.phi / width);
    if (b >= static_cast<std::size_t>(n_bins)) {
      b = static_cast<std::size_t>(n_bins) - 1;  // guards the phi ~ 2pi edge
    }
    sums[b] += r.sq_err;
    ++map.bins[b].count;
  }
  for (std::size_t b = 0; b < map.bins.size(); ++b) {
    map.bins[b].mse = map.bins[b].count == 0
                          ? std::numeric_limits<double>::quiet_NaN()
                          : sums[b] / static_cast<double>(map.bins[b].count);
  }
  return map;
}

std::vector<std::pair<int, PolarErrorMap>> bin_polar_per_turbine(
    const std::vector<ErrorRecord>& records, int n_bins,
    std::size_t n_turbines) {
  std::vector<std::vector<ErrorRecord>> grouped(n_turbines);
  for (const ErrorRecord& r : records) {
    if (r.turbine < 1 || static_cast<std::size_t>(r.turbine) > n_turbines) {
      throw InputError("record turbine id outside the farm");
    }
    grouped[static_cast<std::size_t>(r.turbine) - 1].push_back(r);
  }
  std::vector<std::pair<int, PolarErrorMap>> out;
  out.reserve(n_turbines);
  for (std::size_t s = 0; s < n_turbines; ++s) {
    out.emplace_back(static_cast<int>(s) + 1, bin_polar(grouped[s], n_bins));
  }
  return out;
}

NmseResult nmse(const std::vector<ErrorRecord>& records,
                std::size_t n_turbines) {
  if (records.empty()) throw InputError("the error metric needs records");

  auto metric = [](const std::vector<const ErrorRecord*>& rs) {
    double mean = 0.0;
    for (const ErrorRecord* r : rs) mean += r->measured;
    mean /= static_cast<double>(rs.size());
    double var = 0.0;
    double sum_sq = 0.0;
    for (const ErrorRecord* r : rs) {
      const double c = r->measured - mean;
      var += c * c;
      sum_sq += r->sq_err;
    }
    var /= static_cast<double>(rs.size());
    if (!(var > 0.0)) {
      throw NumericError(
          "measured values have zero variance; the normalized error is "
          "undefined");
    }
    return 100.0 * sum_sq / (static_cast<double>(rs.size()) * var);
  };

  std::vector<const ErrorRecord*> all;
  all.reserve(records.size());
  std::vector<std::vector<const ErrorRecord*>> grouped(n_turbines);
  for (const ErrorRecord& r : records) {
    if (r.turbine < 1 || static_cast<std::size_t>(r.turbine) > n_turbines) {
      throw InputError("record turbine id outside the farm");
    }
    all.push_back(&r);
    grouped[static_cast<std::size_t>(r.turbine) - 1].push_back(&r);
  }

  NmseResult out;
  out.overall = metric(all);
  out.per_turbine.resize(n_turbines);
  for (std::size_t s = 0; s < n_turbines; ++s) {
    out.per_turbine[s] = grouped[s].empty()
                             ? std::numeric_limits<double>::quiet_NaN()
                             : metric(grouped[s]);
  }
  return out;
}

BandComparison band_comparison(const std::vector<ErrorRecord>& records,
                               const switching::SectorTable& table,
                               double half_width_rad) {
  if (!(half_width_rad > 0.0) || !std::isfinite(half_width_rad)) {
    throw InputError("band half-width must be positive");
  }
  BandComparison out;
  out.half_width_rad = half_width_rad;
  out.training_band_mse = mean_sq_err(records, table.training_angles(),
                                      half_width_rad, &out.training_band_count);
  out.boundary_band_mse = mean_sq_err(records, table.boundaries(),
                                      half_width_rad, &out.boundary_band_count);
  out.ratio = out.boundary_band_mse / out.training_band_mse;
  return out;
}

std::string records_to_csv(const std::vector<ErrorRecord>& records) {
  std::ostringstream os;
  os << "t,phi,s,pred_mean,pred_var,measured,sq_err,model_index\n";
  for (const ErrorRecord& r : records) {
    os << r.t << "," << io::format_double(r.phi) << "," << r.turbine << ","
       << io::format_double(r.pred_mean) << "," << io::format_double(r.pred_var)
       << "," << io::format_double(r.measured) << ","
       << io::format_double(r.sq_err) << "," << r.model_index << "\n";
  }
  return os.str();
}

std::string polar_to_csv(const PolarErrorMap& map) {
  std::ostringstream os;
  os << "bin_lower_rad,bin_upper_rad,count,mse\n";
  for (const PolarBin& b : map.bins) {
    os << io::format_double(b.lower) << "," << io::format_double(b.upper) << ","
       << b.count << "," << io::format_double(b.mse) << "\n";
  }
  return os.str();
}

std::string polar_per_turbine_to_csv(
    const std::vector<std::pair<int, PolarErrorMap>>& maps) {
  std::ostringstream os;
  os << "turbine,bin_lower_rad,bin_upper_rad,count,mse\n";
  for (const auto& [turbine, map] : maps) {
    for (const PolarBin& b : map.bins) {
      os << turbine << "," << io::format_double(b.lower) << ","
         << io::format_double(b.upper) << "," << b.count << ","
         << io::format_double(b.mse) << "\n";
    }
  }
  return os.str();
}

}  // namespace gpsparx::eval
