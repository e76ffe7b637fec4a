#include <doctest.h>

#include <json.hpp>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "gpsparx/cli/config.hpp"
#include "gpsparx/common/error.hpp"
#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;

using gpsparx::cli::ConfigOverrides;
using gpsparx::cli::ExperimentConfig;
using gpsparx::cli::load_experiment_config;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("gpsparx_config_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

const char* kLayoutJson = R"({
  "rotor_diameter": 80.0,
  "hub_height": 70.0,
  "turbines": [
    {"id": 1, "x": 0.0, "y": 0.0},
    {"id": 2, "x": 400.0, "y": 0.0}
  ]
})";

nlohmann::ordered_json base_config() {
  return nlohmann::ordered_json{
      {"layout", "layout.json"},
      {"wake_geometry",
       {{"expansion_coefficient", 0.075},
        {"max_wake_length", 4000.0},
        {"near_wake_offset", 0.0}}},
      {"simulation",
       {{"thrust_coefficient", 0.8},
        {"turbulence_noise_sd", 0.1},
        {"n_steps", 40},
        {"free_stream",
         {{"kind", "random_walk"},
          {"mean_speed", 10.0},
          {"speed_step_sd", 0.25},
          {"direction_step_sd", 0.0},
          {"min_speed", 4.0},
          {"max_speed", 16.0}}}}},
      {"test",
       {{"n_steps", 60},
        {"free_stream",
         {{"kind", "sweep"},
          {"mean_speed", 10.0},
          {"speed_amplitude", 2.0},
          {"speed_cycles", 2.0}}}}},
      {"training_angles", {0.0, 3.141592653589793}},
      {"fit", {{"restarts", 2}, {"max_iters", 30}, {"grad_tol", 1e-5},
               {"threads", 1}}},
      {"max_design_rows", 100},
      {"evaluation", {{"n_bins", 36}, {"band_half_width_deg", 10.0}}},
      {"mode", "osa"},
      {"output_dir", "out"},
      {"seed", 11}};
}

std::string config_path(const TempDir& dir, const nlohmann::ordered_json& j) {
  write_file(dir.path / "layout.json", kLayoutJson);
  const auto p = dir.path / "experiment.json";
  write_file(p, j.dump(2) + "\n");
  return p.string();
}

}  // namespace

TEST_CASE("a complete config loads with every field resolved") {
  TempDir dir;
  const auto path = config_path(dir, base_config());
  const ExperimentConfig cfg = load_experiment_config(path, {});

  CHECK(cfg.layout.size() == 2);
  CHECK(cfg.layout.rotor_diameter() == 80.0);
  CHECK(cfg.geometry.max_wake_length == 4000.0);
  CHECK(cfg.train_sim.thrust_coefficient == 0.8);
  CHECK(cfg.train_sim.n_steps == 40);
  CHECK(cfg.train_sim.free_stream.kind ==
        gpsparx::sim::FreeStreamKind::random_walk);
  CHECK(cfg.test_sim.n_steps == 60);
  CHECK(cfg.test_sim.free_stream.kind == gpsparx::sim::FreeStreamKind::sweep);
  // Test inherits the training thrust/noise unless overridden.
  CHECK(cfg.test_sim.thrust_coefficient == 0.8);
  CHECK(cfg.test_sim.turbulence_noise_sd == 0.1);
  REQUIRE(cfg.training_angles.size() == 2);
  CHECK(cfg.training_angles[0] == 0.0);
  CHECK(cfg.training_angles[1] == 3.141592653589793);
  CHECK(cfg.mode == gpsparx::switching::PredictionMode::osa);
  CHECK(cfg.evaluation.n_bins == 36);
  CHECK(cfg.fit.restarts == 2);
  CHECK(cfg.max_design_rows == 100);
  CHECK(cfg.seed == 11);
  CHECK(cfg.output_dir == "out");
}

TEST_CASE("missing config and layout files name the offending path") {
  expect_throw_containing<gpsparx::InputError>(
      [] { load_experiment_config("/nonexistent/exp.json", {}); },
      "/nonexistent/exp.json");

  TempDir dir;
  auto j = base_config();
  j["layout"] = "absent_layout.json";
  const auto p = dir.path / "experiment.json";
  write_file(p, j.dump());
  expect_throw_containing<gpsparx::InputError>(
      [&] { load_experiment_config(p.string(), {}); }, "absent_layout.json");
}

TEST_CASE("required keys are enforced") {
  for (const char* key : {"layout", "simulation", "training_angles", "test"}) {
    TempDir dir;
    auto j = base_config();
    j.erase(key);
    const auto path = config_path(dir, j);
    expect_throw_containing<gpsparx::InputError>(
        [&] { load_experiment_config(path, {}); }, key);
  }
}

TEST_CASE("training must hold the wind direction fixed") {
  TempDir dir;
  auto j = base_config();
  j["simulation"]["free_stream"]["direction_step_sd"] = 0.2;
  const auto path = config_path(dir, j);
  expect_throw_containing<gpsparx::InputError>(
      [&] { load_experiment_config(path, {}); }, "hold the wind direction");

  auto sweep_train = base_config();
  sweep_train["simulation"]["free_stream"] =
      {{"kind", "sweep"}, {"mean_speed", 10.0}};
  TempDir dir2;
  const auto path2 = config_path(dir2, sweep_train);
  CHECK_THROWS_AS(load_experiment_config(path2, {}), gpsparx::InputError);

  // The test sweep is allowed to move the direction.
  const ExperimentConfig ok = load_experiment_config(config_path(dir, base_config()), {});
  CHECK(ok.test_sim.free_stream.kind == gpsparx::sim::FreeStreamKind::sweep);
}

TEST_CASE("degree-based angle entry converts on request") {
  TempDir dir;
  auto j = base_config();
  j["training_angles"] = {0.0, 90.0, 180.0, 270.0};
  const auto path = config_path(dir, j);
  ConfigOverrides ov;
  ov.degrees = true;
  const ExperimentConfig cfg = load_experiment_config(path, ov);
  REQUIRE(cfg.training_angles.size() == 4);
  CHECK(close_rel(cfg.training_angles[1], 1.5707963267948966, 1e-15));
  CHECK(close_rel(cfg.training_angles[3], 4.71238898038469, 1e-15));
}

TEST_CASE("overrides take precedence over the file") {
  TempDir dir;
  const auto path = config_path(dir, base_config());
  ConfigOverrides ov;
  ov.seed = 99;
  ov.output_dir = "elsewhere";
  ov.mode = "cascade";
  const ExperimentConfig cfg = load_experiment_config(path, ov);
  CHECK(cfg.seed == 99);
  CHECK(cfg.output_dir == "elsewhere");
  CHECK(cfg.mode == gpsparx::switching::PredictionMode::cascade);
}

TEST_CASE("invalid mode and angle values are rejected") {
  TempDir dir;
  auto j = base_config();
  j["mode"] = "oracle";
  expect_throw_containing<gpsparx::InputError>(
      [&] { load_experiment_config(config_path(dir, j), {}); }, "oracle");

  auto dup = base_config();
  dup["training_angles"] = {1.0, 1.0};
  TempDir dir2;
  expect_throw_containing<gpsparx::InputError>(
      [&] { load_experiment_config(config_path(dir2, dup), {}); },
      "duplicate");
}

TEST_CASE("the pipeline hash ignores reporting settings but not the seed") {
  TempDir dir;
  const auto path = config_path(dir, base_config());
  const ExperimentConfig base = load_experiment_config(path, {});
  const std::string h0 = base.config_hash();
  CHECK(h0.size() == 16);
  CHECK(h0 == base.config_hash());  // stable

  ConfigOverrides mode_ov;
  mode_ov.mode = "cascade";
  const ExperimentConfig other_mode = load_experiment_config(path, mode_ov);
  CHECK(other_mode.config_hash() == h0);

  ConfigOverrides out_ov;
  out_ov.output_dir = "different";
  CHECK(load_experiment_config(path, out_ov).config_hash() == h0);

  ConfigOverrides seed_ov;
  seed_ov.seed = 12;
  CHECK(load_experiment_config(path, seed_ov).config_hash() != h0);

  auto j = base_config();
  j["simulation"]["n_steps"] = 41;
  TempDir dir2;
  const ExperimentConfig grown =
      load_experiment_config(config_path(dir2, j), {});
  CHECK(grown.config_hash() != h0);

  auto eval_change = base_config();
  eval_change["evaluation"]["n_bins"] = 72;
  TempDir dir3;
  CHECK(load_experiment_config(config_path(dir3, eval_change), {})
            .config_hash() == h0);
}
