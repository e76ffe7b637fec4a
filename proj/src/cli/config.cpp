#include "gpsparx/cli/config.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "gpsparx/common/angles.hpp"
#include "gpsparx/common/error.hpp"
#include "gpsparx/common/hash.hpp"
#include "gpsparx/io/text.hpp"
#include "gpsparx/switching/sectors.hpp"

namespace gpsparx::cli {
namespace {

namespace fs = std::filesystem;

nlohmann::json parse_json_text(const std::string& text, const std::string& what) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw InputError("malformed JSON in " + what);
  }
  return j;
}

double get_number(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) {
    throw InputError(std::string("config field '") + key + "' must be a number");
  }
  return j[key].get<double>();
}

sim::FreeStreamConfig parse_free_stream(const nlohmann::json& j, bool degrees) {
  if (!j.is_object() || !j.contains("kind")) {
    throw InputError("free_stream block needs a 'kind' field");
  }
  sim::FreeStreamConfig out;
  out.kind = sim::free_stream_kind_from_string(j["kind"].get<std::string>());
  out.mean_speed = get_number(j, "mean_speed", out.mean_speed);
  double phi = get_number(j, "initial_phi", 0.0);
  if (degrees) phi = degrees_to_radians(phi);
  out.initial_phi = wrap_angle(phi);
  out.speed_amplitude = get_number(j, "speed_amplitude", out.speed_amplitude);
  out.speed_cycles = get_number(j, "speed_cycles", out.speed_cycles);
  out.speed_step_sd = get_number(j, "speed_step_sd", out.speed_step_sd);
  out.direction_step_sd =
      get_number(j, "direction_step_sd", out.direction_step_sd);
  out.min_speed = get_number(j, "min_speed", out.min_speed);
  out.max_speed = get_number(j, "max_speed", out.max_speed);
  out.validate();
  return out;
}

nlohmann::ordered_json free_stream_to_json(const sim::FreeStreamConfig& c) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(c.kind);
  j["mean_speed"] = c.mean_speed;
  j["initial_phi"] = c.initial_phi;
  j["speed_amplitude"] = c.speed_amplitude;
  j["speed_cycles"] = c.speed_cycles;
  j["speed_step_sd"] = c.speed_step_sd;
  j["direction_step_sd"] = c.direction_step_sd;
  j["min_speed"] = c.min_speed;
  j["max_speed"] = c.max_speed;
  return j;
}

}  // namespace

nlohmann::ordered_json simulation_to_json(const sim::SimulationConfig& c) {
  nlohmann::ordered_json j;
  j["thrust_coefficient"] = c.thrust_coefficient;
  j["turbulence_noise_sd"] = c.turbulence_noise_sd;
  j["n_steps"] = c.n_steps;
  j["rng_seed"] = c.rng_seed;
  j["free_stream"] = free_stream_to_json(c.free_stream);
  return j;
}

nlohmann::ordered_json geometry_to_json(const farm::WakeGeometryParams& g) {
  nlohmann::ordered_json j;
  j["expansion_coefficient"] = g.expansion_coefficient;
  j["max_wake_length"] = g.max_wake_length;
  j["near_wake_offset"] = g.near_wake_offset;
  return j;
}

nlohmann::ordered_json ExperimentConfig::pipeline_json() const {
  nlohmann::ordered_json j;
  j["layout"] = layout.to_json();
  j["wake_geometry"] = geometry_to_json(geometry);
  j["simulation"] = simulation_to_json(train_sim);
  j["test"] = simulation_to_json(test_sim);
  j["training_angles"] = nlohmann::ordered_json(training_angles);
  j["fit"] = {{"restarts", fit.restarts},
              {"max_iters", fit.max_iters},
              {"grad_tol", fit.grad_tol},
              {"threads", fit.threads}};
  j["max_design_rows"] = max_design_rows;
  j["seed"] = seed;
  return j;
}

std::string ExperimentConfig::config_hash() const {
  const std::uint64_t h = fnv1a64(pipeline_json().dump());
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

ExperimentConfig load_experiment_config(const std::string& path,
                                        const ConfigOverrides& overrides) {
  const nlohmann::json j =
      parse_json_text(io::read_text_file(path), "config file " + path);
  if (!j.is_object()) throw InputError("config file must hold a JSON object");
  for (const char* key : {"layout", "simulation", "training_angles", "test"}) {
    if (!j.contains(key)) {
      throw InputError(std::string("config is missing field '") + key + "'");
    }
  }

  ExperimentConfig cfg;

  // Layout path resolves relative to the config file's directory.
  const fs::path config_dir = fs::path(path).parent_path();
  fs::path layout_path = fs::path(j["layout"].get<std::string>());
  if (layout_path.is_relative()) layout_path = config_dir / layout_path;
  cfg.layout_path = layout_path.string();
  cfg.layout = farm::FarmLayout::from_json(parse_json_text(
      io::read_text_file(cfg.layout_path), "layout file " + cfg.layout_path));

  if (j.contains("wake_geometry")) {
    const auto& g = j["wake_geometry"];
    cfg.geometry.expansion_coefficient =
        get_number(g, "expansion_coefficient", cfg.geometry.expansion_coefficient);
    cfg.geometry.max_wake_length =
        get_number(g, "max_wake_length", cfg.geometry.max_wake_length);
    cfg.geometry.near_wake_offset =
        get_number(g, "near_wake_offset", cfg.geometry.near_wake_offset);
  }
  cfg.geometry.validate();

  const auto& sj = j["simulation"];
  cfg.train_sim.thrust_coefficient =
      get_number(sj, "thrust_coefficient", cfg.train_sim.thrust_coefficient);
  cfg.train_sim.turbulence_noise_sd =
      get_number(sj, "turbulence_noise_sd", cfg.train_sim.turbulence_noise_sd);
  cfg.train_sim.n_steps =
      static_cast<std::int64_t>(get_number(sj, "n_steps", 500));
  if (!sj.contains("free_stream")) {
    throw InputError("config 'simulation' needs a free_stream block");
  }
  cfg.train_sim.free_stream =
      parse_free_stream(sj["free_stream"], overrides.degrees);
  if (cfg.train_sim.free_stream.kind == sim::FreeStreamKind::sweep ||
      (cfg.train_sim.free_stream.kind == sim::FreeStreamKind::random_walk &&
       cfg.train_sim.free_stream.direction_step_sd != 0.0)) {
    throw InputError(
        "training simulations must hold the wind direction fixed at each "
        "training angle: use a constant or random_walk free stream with "
        "direction_step_sd = 0");
  }

  const auto& tj = j["test"];
  cfg.test_sim = cfg.train_sim;
  cfg.test_sim.n_steps =
      static_cast<std::int64_t>(get_number(tj, "n_steps", 1440));
  cfg.test_sim.turbulence_noise_sd = get_number(
      tj, "turbulence_noise_sd", cfg.train_sim.turbulence_noise_sd);
  if (!tj.contains("free_stream")) {
    throw InputError("config 'test' needs a free_stream block");
  }
  cfg.test_sim.free_stream =
      parse_free_stream(tj["free_stream"], overrides.degrees);

  if (!j["training_angles"].is_array() || j["training_angles"].empty()) {
    throw InputError("training_angles must be a non-empty array");
  }
  for (const auto& a : j["training_angles"]) {
    double angle = a.get<double>();
    if (overrides.degrees) angle = degrees_to_radians(angle);
    cfg.training_angles.push_back(wrap_angle(angle));
  }
  // Building the sector table validates distinctness and separability early.
  switching::SectorTable::build(cfg.training_angles);

  if (j.contains("fit")) {
    const auto& f = j["fit"];
    cfg.fit.restarts = static_cast<int>(get_number(f, "restarts", 5));
    cfg.fit.max_iters = static_cast<int>(get_number(f, "max_iters", 100));
    cfg.fit.grad_tol = get_number(f, "grad_tol", 1e-5);
    cfg.fit.threads = static_cast<int>(get_number(f, "threads", 1));
  }
  if (j.contains("max_design_rows")) {
    const double raw = get_number(j, "max_design_rows", 600.0);
    if (raw < 2) throw InputError("max_design_rows must be at least 2");
    cfg.max_design_rows = static_cast<std::size_t>(raw);
  }
  if (j.contains("evaluation")) {
    const auto& e = j["evaluation"];
    cfg.evaluation.n_bins = static_cast<int>(get_number(e, "n_bins", 360));
    cfg.evaluation.band_half_width_deg =
        get_number(e, "band_half_width_deg", 10.0);
  }
  if (j.contains("mode")) {
    cfg.mode =
        switching::prediction_mode_from_string(j["mode"].get<std::string>());
  }
  if (j.contains("output_dir")) {
    cfg.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      throw InputError("config field 'seed' must be an integer");
    }
    cfg.seed = j["seed"].get<std::uint64_t>();
  }

  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
  if (overrides.mode) {
    cfg.mode = switching::prediction_mode_from_string(*overrides.mode);
  }
  return cfg;
}

}  // namespace gpsparx::cli
