#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gpsparx/cli/commands.hpp"
#include "gpsparx/cli/config.hpp"
#include "gpsparx/common/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitRuntime = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Wind-farm GP-SPARX toolkit: simulate wake-affected turbine data, "
      "train direction-specific GP models, switch them by wind-direction "
      "sector, and evaluate a polar error map.\n"
      "Angles are radians unless --degrees is given; a wind direction is "
      "the direction the wind blows toward, counterclockwise from +x."};
  app.require_subcommand(1);

  std::string config_path;
  gpsparx::cli::ConfigOverrides overrides;
  std::string mode_override;
  std::string out_override;
  std::uint64_t seed_override = 0;

  app.add_option("--config", config_path, "Experiment config JSON file")
      ->required();
  auto* seed_opt =
      app.add_option("--seed", seed_override, "Override the experiment seed");
  auto* out_opt = app.add_option("--out", out_override,
                                 "Override the output directory");
  auto* mode_opt =
      app.add_option("--mode", mode_override,
                     "Override the prediction mode (osa or cascade)");
  app.add_flag("--degrees", overrides.degrees,
               "Interpret config angles as degrees");

  auto* sim_cmd = app.add_subcommand(
      "simulate", "Generate the per-angle training datasets and test sweep");
  auto* train_cmd = app.add_subcommand(
      "train", "Train one pattern model per training angle");
  auto* eval_cmd = app.add_subcommand(
      "evaluate", "Score the switched predictor over the test sweep");
  auto* report_cmd =
      app.add_subcommand("report", "Print a digest of the evaluation outputs");
  // Let global options (--config and friends) appear after the subcommand
  // name as well as before it.
  for (auto* sub : {sim_cmd, train_cmd, eval_cmd, report_cmd}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*seed_opt) overrides.seed = seed_override;
    if (*out_opt) overrides.output_dir = out_override;
    if (*mode_opt) overrides.mode = mode_override;

    const gpsparx::cli::ExperimentConfig cfg =
        gpsparx::cli::load_experiment_config(config_path, overrides);

    if (*sim_cmd) gpsparx::cli::cmd_simulate(cfg);
    if (*train_cmd) gpsparx::cli::cmd_train(cfg);
    if (*eval_cmd) gpsparx::cli::cmd_evaluate(cfg);
    if (*report_cmd) gpsparx::cli::cmd_report(cfg);
    return kExitOk;
  } catch (const gpsparx::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const gpsparx::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
