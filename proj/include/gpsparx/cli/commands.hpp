#pragma once

#include "gpsparx/cli/config.hpp"

namespace gpsparx::cli {

// Each command throws InputError for bad inputs and NumericError for failed
// computation; the entry point maps those to exit codes 2 and 3.

// Writes one training dataset per training angle plus the test sweep, each
// a CSV with a JSON sidecar, into the output directory.
void cmd_simulate(const ExperimentConfig& cfg);

// Trains one pattern model per training angle from the simulated datasets;
// writes model_XXX.json files, sectors.json, and — last, only on full
// success — manifest.json tying the bundle to the config hash.
void cmd_train(const ExperimentConfig& cfg);

// Runs the switched predictor over the test sweep; writes records.csv,
// polar_map.csv, polar_map_turbines.csv, and summary.json.
void cmd_evaluate(const ExperimentConfig& cfg);

// Prints a human-readable digest of summary.json and the polar map.
void cmd_report(const ExperimentConfig& cfg);

}  // namespace gpsparx::cli
