#include "gpsparx/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include "gpsparx/common/angles.hpp"
#include "gpsparx/common/error.hpp"
#include "gpsparx/common/hash.hpp"
#include "gpsparx/eval/evaluate.hpp"
#include "gpsparx/io/text.hpp"
#include "gpsparx/sim/simulator.hpp"
#include "gpsparx/sparx/model.hpp"
#include "gpsparx/switching/sectors.hpp"

namespace gpsparx::cli {
namespace {

namespace fs = std::filesystem;

constexpr int kFormatVersion = 1;
constexpr std::uint64_t kTestSeedStream = 1;
constexpr std::uint64_t kTrainSeedBase = 1000;
constexpr std::uint64_t kFitSeedBase = 2000;

std::string zero_padded(std::size_t k) {
  std::ostringstream os;
  os << std::setw(3) << std::setfill('0') << k;
  return os.str();
}

std::string train_csv_name(std::size_t k) {
  return "train_" + zero_padded(k) + ".csv";
}
std::string train_sidecar_name(std::size_t k) {
  return "train_" + zero_padded(k) + ".json";
}
std::string model_file_name(std::size_t k) {
  return "model_" + zero_padded(k) + ".json";
}

fs::path out_path(const ExperimentConfig& cfg, const std::string& name) {
  return fs::path(cfg.output_dir) / name;
}

void write_json_file(const fs::path& path, const nlohmann::ordered_json& j) {
  io::write_text_file(path.string(), j.dump(2) + "\n");
}

nlohmann::json read_json_file(const fs::path& path, const char* what) {
  nlohmann::json j =
      nlohmann::json::parse(io::read_text_file(path.string()), nullptr, false);
  if (j.is_discarded()) {
    throw InputError(std::string("malformed JSON in ") + what + " " +
                     path.string());
  }
  return j;
}

// The per-angle training simulation: same template, but pinned to the
// angle's direction and its own derived seed.
sim::SimulationConfig training_sim_for_angle(const ExperimentConfig& cfg,
                                             std::size_t k) {
  sim::SimulationConfig c = cfg.train_sim;
  c.free_stream.initial_phi = cfg.training_angles[k];
  c.rng_seed = mix_seed(cfg.seed, kTrainSeedBase + k);
  return c;
}

nlohmann::ordered_json dataset_sidecar(const ExperimentConfig& cfg,
                                       const std::string& role,
                                       const sim::SimulationConfig& sim_cfg,
                                       const nlohmann::ordered_json& extra) {
  nlohmann::ordered_json j;
  j["format_version"] = kFormatVersion;
  j["role"] = role;
  j["config_hash"] = cfg.config_hash();
  j["layout_file"] = fs::path(cfg.layout_path).filename().string();
  j["wake_geometry"] = geometry_to_json(cfg.geometry);
  j["simulation"] = simulation_to_json(sim_cfg);
  for (const auto& [key, value] : extra.items()) j[key] = value;
  return j;
}

double nmse_or_nan(const std::vector<eval::ErrorRecord>& records,
                   std::size_t n_turbines) {
  try {
    return eval::nmse(records, n_turbines).overall;
  } catch (const NumericError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

nlohmann::ordered_json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

void cmd_simulate(const ExperimentConfig& cfg) {
  fs::create_directories(cfg.output_dir);

  for (std::size_t k = 0; k < cfg.training_angles.size(); ++k) {
    const sim::SimulationConfig sim_cfg = training_sim_for_angle(cfg, k);
    const sim::FarmDataset ds = sim::simulate(cfg.layout, cfg.geometry, sim_cfg);
    io::write_text_file(out_path(cfg, train_csv_name(k)).string(), ds.to_csv());
    nlohmann::ordered_json extra;
    extra["angle_index"] = k;
    extra["pattern_phi"] = cfg.training_angles[k];
    write_json_file(out_path(cfg, train_sidecar_name(k)),
                    dataset_sidecar(cfg, "train", sim_cfg, extra));
    std::cout << "wrote " << out_path(cfg, train_csv_name(k)).string() << " ("
              << ds.n_steps() << " steps)\n";
  }

  sim::SimulationConfig test_cfg = cfg.test_sim;
  test_cfg.rng_seed = mix_seed(cfg.seed, kTestSeedStream);
  const sim::FarmDataset test = sim::simulate(cfg.layout, cfg.geometry, test_cfg);
  io::write_text_file(out_path(cfg, "test.csv").string(), test.to_csv());
  write_json_file(out_path(cfg, "test.json"),
                  dataset_sidecar(cfg, "test", test_cfg, {}));
  std::cout << "wrote " << out_path(cfg, "test.csv").string() << " ("
            << test.n_steps() << " steps)\n";
}

void cmd_train(const ExperimentConfig& cfg) {
  fs::create_directories(cfg.output_dir);

  // A stale manifest must not survive a failed retrain.
  const fs::path manifest_path = out_path(cfg, "manifest.json");
  if (fs::exists(manifest_path)) fs::remove(manifest_path);

  const std::size_t n_angles = cfg.training_angles.size();
  std::vector<std::string> model_files;
  std::vector<std::string> failures;
  bool any_input_error = false;

  for (std::size_t k = 0; k < n_angles; ++k) {
    const fs::path csv_path = out_path(cfg, train_csv_name(k));
    try {
      const sim::FarmDataset ds =
          sim::FarmDataset::from_csv(io::read_text_file(csv_path.string()));
      sparx::SparxTrainOptions opts;
      opts.fit = cfg.fit;
      opts.fit.seed = mix_seed(cfg.seed, kFitSeedBase + k);
      opts.max_design_rows = cfg.max_design_rows;
      const sparx::GpSparxModel model = sparx::train_pattern(
          ds, cfg.layout, cfg.geometry, cfg.training_angles[k], opts);
      write_json_file(out_path(cfg, model_file_name(k)), model.to_json());
      model_files.push_back(model_file_name(k));
      const auto& info = model.gp().fit_info();
      std::cout << "trained " << model_file_name(k) << " (angle "
                << cfg.training_angles[k] << " rad, objective "
                << info.objective << ", " << info.iterations
                << " iterations, stop: " << info.stop_reason << ")\n";
    } catch (const InputError& e) {
      any_input_error = true;
      failures.push_back("angle index " + std::to_string(k) + ": " + e.what());
    } catch (const NumericError& e) {
      failures.push_back("angle index " + std::to_string(k) + ": " + e.what());
    }
  }

  if (!failures.empty()) {
    std::ostringstream msg;
    msg << "training failed for " << failures.size() << " of " << n_angles
        << " angles; no manifest written";
    for (const std::string& f : failures) msg << "\n  " << f;
    if (any_input_error) throw InputError(msg.str());
    throw NumericError(msg.str());
  }

  const switching::SectorTable table =
      switching::SectorTable::build(cfg.training_angles);
  write_json_file(out_path(cfg, "sectors.json"), table.to_json());

  nlohmann::ordered_json manifest;
  manifest["format_version"] = kFormatVersion;
  manifest["config_hash"] = cfg.config_hash();
  manifest["seed"] = cfg.seed;
  manifest["n_turbines"] = cfg.layout.size();
  manifest["training_angles"] = nlohmann::ordered_json(cfg.training_angles);
  manifest["model_files"] = nlohmann::ordered_json(model_files);
  manifest["sector_file"] = "sectors.json";
  manifest["test_dataset"] = "test.csv";
  write_json_file(manifest_path, manifest);
  std::cout << "wrote " << manifest_path.string() << " (config hash "
            << cfg.config_hash() << ")\n";
}

void cmd_evaluate(const ExperimentConfig& cfg) {
  const fs::path manifest_path = out_path(cfg, "manifest.json");
  if (!fs::exists(manifest_path)) {
    throw InputError("missing manifest " + manifest_path.string() +
                     "; run the train command first");
  }
  const nlohmann::json manifest = read_json_file(manifest_path, "manifest");
  const std::string trained_hash = manifest.value("config_hash", std::string());
  if (trained_hash != cfg.config_hash()) {
    throw InputError(
        "config does not match the trained bundle (manifest hash " +
        trained_hash + ", config hash " + cfg.config_hash() +
        "); re-run simulate and train");
  }

  const switching::SectorTable table = switching::SectorTable::from_json(
      read_json_file(out_path(cfg, manifest.value("sector_file",
                                                  std::string("sectors.json"))),
                     "sector table"));

  std::vector<sparx::GpSparxModel> models;
  for (const auto& f : manifest["model_files"]) {
    models.push_back(sparx::GpSparxModel::from_json(
        read_json_file(out_path(cfg, f.get<std::string>()), "model file")));
  }
  if (models.size() != table.n_sectors()) {
    throw InputError("manifest model count does not match the sector table");
  }

  const sim::FarmDataset test = sim::FarmDataset::from_csv(io::read_text_file(
      out_path(cfg, manifest.value("test_dataset", std::string("test.csv")))
          .string()));

  const std::vector<eval::ErrorRecord> records =
      eval::evaluate_sweep(models, table, test, cfg.mode);
  io::write_text_file(out_path(cfg, "records.csv").string(),
                      eval::records_to_csv(records));

  const eval::PolarErrorMap polar =
      eval::bin_polar(records, cfg.evaluation.n_bins);
  io::write_text_file(out_path(cfg, "polar_map.csv").string(),
                      eval::polar_to_csv(polar));
  io::write_text_file(
      out_path(cfg, "polar_map_turbines.csv").string(),
      eval::polar_per_turbine_to_csv(eval::bin_polar_per_turbine(
          records, cfg.evaluation.n_bins, test.n_turbines())));

  const eval::NmseResult overall = eval::nmse(records, test.n_turbines());
  const eval::BandComparison bands = eval::band_comparison(
      records, table,
      degrees_to_radians(cfg.evaluation.band_half_width_deg));

  nlohmann::ordered_json summary;
  summary["format_version"] = kFormatVersion;
  summary["config_hash"] = cfg.config_hash();
  summary["mode"] = to_string(cfg.mode);
  summary["n_records"] = records.size();
  summary["n_bins"] = cfg.evaluation.n_bins;
  summary["nmse"] = {{"overall", overall.overall}};
  nlohmann::ordered_json per_turbine = nlohmann::ordered_json::array();
  for (double v : overall.per_turbine) per_turbine.push_back(finite_or_null(v));
  summary["nmse"]["per_turbine"] = std::move(per_turbine);

  nlohmann::ordered_json sectors = nlohmann::ordered_json::array();
  for (const switching::Sector& s : table.sectors()) {
    std::vector<eval::ErrorRecord> sector_records;
    for (const eval::ErrorRecord& r : records) {
      if (r.model_index == s.model_index) sector_records.push_back(r);
    }
    nlohmann::ordered_json sj;
    sj["model_index"] = s.model_index;
    sj["training_angle"] = s.training_angle;
    sj["lower"] = s.lower;
    sj["upper"] = s.upper;
    sj["n_records"] = sector_records.size();
    sj["nmse"] = sector_records.empty()
                     ? nlohmann::ordered_json(nullptr)
                     : finite_or_null(
                           nmse_or_nan(sector_records, test.n_turbines()));
    sectors.push_back(std::move(sj));
  }
  summary["sectors"] = std::move(sectors);

  summary["band_comparison"] = {
      {"half_width_deg", cfg.evaluation.band_half_width_deg},
      {"training_band_mse", finite_or_null(bands.training_band_mse)},
      {"training_band_count", bands.training_band_count},
      {"boundary_band_mse", finite_or_null(bands.boundary_band_mse)},
      {"boundary_band_count", bands.boundary_band_count},
      {"ratio", finite_or_null(bands.ratio)}};

  std::uint64_t negative_variances = 0;
  for (const auto& m : models) {
    negative_variances += m.gp().negative_variance_count();
  }
  summary["negative_variance_clamps"] = negative_variances;

  write_json_file(out_path(cfg, "summary.json"), summary);
  std::cout << "evaluated " << records.size() << " records; overall NMSE "
            << overall.overall << "; boundary/training MSE ratio "
            << bands.ratio << "\n";
}

void cmd_report(const ExperimentConfig& cfg) {
  const nlohmann::json summary =
      read_json_file(out_path(cfg, "summary.json"), "summary");

  std::cout << "experiment report\n";
  std::cout << "  config hash:   " << summary.value("config_hash", std::string())
            << "\n";
  std::cout << "  mode:          " << summary.value("mode", std::string())
            << "\n";
  std::cout << "  records:       " << summary.value("n_records", 0) << "\n";
  if (summary.contains("nmse")) {
    std::cout << "  overall NMSE:  " << summary["nmse"].value("overall", 0.0)
              << "\n";
  }
  if (summary.contains("band_comparison")) {
    const auto& b = summary["band_comparison"];
    std::cout << "  training-band MSE: "
              << b.value("training_band_mse", 0.0) << "  (count "
              << b.value("training_band_count", 0) << ")\n";
    std::cout << "  boundary-band MSE: "
              << b.value("boundary_band_mse", 0.0) << "  (count "
              << b.value("boundary_band_count", 0) << ")\n";
    std::cout << "  boundary/training ratio: " << b.value("ratio", 0.0) << "\n";
  }
  if (summary.contains("sectors")) {
    std::cout << "  sectors:\n";
    for (const auto& s : summary["sectors"]) {
      std::cout << "    model " << s.value("model_index", -1) << "  angle "
                << s.value("training_angle", 0.0) << " rad  ["
                << s.value("lower", 0.0) << ", " << s.value("upper", 0.0)
                << ")  records " << s.value("n_records", 0);
      if (s.contains("nmse") && s["nmse"].is_number()) {
        std::cout << "  NMSE " << s["nmse"].get<double>();
      }
      std::cout << "\n";
    }
  }

  // Worst direction bins, from the polar map.
  const fs::path polar_path = out_path(cfg, "polar_map.csv");
  if (fs::exists(polar_path)) {
    const std::string text = io::read_text_file(polar_path.string());
    const auto lines = io::split_lines(text);
    struct BinRow {
      double lower;
      double mse;
    };
    std::vector<BinRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto f = io::split_csv(lines[i]);
      if (f.size() != 4) continue;
      const double mse = io::parse_double(f[3], "mse");
      if (std::isfinite(mse)) {
        rows.push_back({io::parse_double(f[0], "bin_lower_rad"), mse});
      }
    }
    std::sort(rows.begin(), rows.end(),
              [](const BinRow& a, const BinRow& b) { return a.mse > b.mse; });
    std::cout << "  worst direction bins:\n";
    for (std::size_t i = 0; i < rows.size() && i < 5; ++i) {
      std::cout << "    " << rows[i].lower << " rad  MSE " << rows[i].mse
                << "\n";
    }
  }
}

}  // namespace gpsparx::cli
