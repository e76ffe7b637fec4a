#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <random>

#include "gpsparx/common/error.hpp"
#include "gpsparx/gp/trained_gp.hpp"
#include "test_util.hpp"

namespace {

using gpsparx::gp::GpHyperparams;
using gpsparx::gp::TrainedGp;
using gpsparx::la::Matrix;
using gpsparx::la::Vector;

TrainedGp make_model(std::uint64_t seed, std::size_t n = 18,
                     std::size_t d = 2) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> norm(1.0, 2.0);
  Matrix x(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) x(i, j) = norm(rng);
  Vector y(n);
  for (double& v : y) v = 3.0 + std::sin(norm(rng));

  GpHyperparams hp;
  hp.signal_sd = 1.4;
  hp.lengthscales.assign(d, 1.1);
  hp.noise_sd = 0.2;
  TrainedGp model =
      TrainedGp::from_data(x, y, hp, gpsparx::gp::Standardize::yes);
  gpsparx::gp::FitInfo info;
  info.restarts = 5;
  info.best_restart = 2;
  info.iterations = 37;
  info.objective = -12.5;
  info.grad_inf_norm = 3e-6;
  info.stop_reason = "gradient_tolerance";
  model.set_fit_info(info);
  return model;
}

}  // namespace

TEST_CASE("serialized models reload to identical predictions") {
  const TrainedGp model = make_model(1);
  const auto j = model.to_json();
  CHECK(j.at("model_type") == "gp_regressor");
  CHECK(j.at("format_version") == 1);

  // Dump/parse so the reload sees exactly what a file would hold. JSON
  // numbers round-trip doubles exactly, so reconditioning reproduces the
  // same factorization bit for bit.
  const auto reparsed = nlohmann::json::parse(j.dump(2));
  const TrainedGp loaded = TrainedGp::from_json(reparsed);

  CHECK(loaded.hyperparams_raw() == model.hyperparams_raw());
  CHECK(loaded.training_rows() == model.training_rows());
  CHECK(loaded.input_dim() == model.input_dim());
  CHECK(loaded.jitter() == model.jitter());
  CHECK(loaded.fit_info().stop_reason == model.fit_info().stop_reason);
  CHECK(loaded.fit_info().best_restart == 2);

  std::mt19937_64 rng(99);
  std::normal_distribution<double> norm(0.0, 3.0);
  Matrix q(40, 2);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t jcol = 0; jcol < 2; ++jcol) q(i, jcol) = norm(rng);
  const auto a = model.predict(q);
  const auto b = loaded.predict(q);
  for (std::size_t i = 0; i < 40; ++i) {
    CHECK(a.mean[i] == b.mean[i]);
    CHECK(a.variance[i] == b.variance[i]);
  }
}

TEST_CASE("tampered weight checksum is rejected") {
  const auto j = make_model(2).to_json();
  auto bad = nlohmann::json::parse(j.dump());
  bad["alpha_l2"] = bad["alpha_l2"].get<double>() * 1.01;
  expect_throw_containing<gpsparx::InputError>(
      [&] { TrainedGp::from_json(bad); }, "checksum");
}

TEST_CASE("tampered targets are caught by the checksum") {
  const auto j = make_model(3).to_json();
  auto bad = nlohmann::json::parse(j.dump());
  bad["y_std"][0] = bad["y_std"][0].get<double>() + 0.25;
  expect_throw_containing<gpsparx::InputError>(
      [&] { TrainedGp::from_json(bad); }, "checksum");
}

TEST_CASE("malformed model JSON is rejected with the field named") {
  const auto good = nlohmann::json::parse(make_model(4).to_json().dump());

  auto missing = good;
  missing.erase("alpha_l2");
  expect_throw_containing<gpsparx::InputError>(
      [&] { TrainedGp::from_json(missing); }, "alpha_l2");

  auto bad_scale = good;
  bad_scale["standardization"]["x_scale"][0] = -1.0;
  expect_throw_containing<gpsparx::InputError>(
      [&] { TrainedGp::from_json(bad_scale); }, "positive");

  auto bad_version = good;
  bad_version["format_version"] = 99;
  expect_throw_containing<gpsparx::InputError>(
      [&] { TrainedGp::from_json(bad_version); }, "format_version");

  auto ragged = good;
  ragged["x_std"][1].push_back(0.0);
  CHECK_THROWS_AS(TrainedGp::from_json(ragged), gpsparx::InputError);

  expect_throw_containing<gpsparx::InputError>(
      [&] { TrainedGp::from_json(nlohmann::json::array()); }, "object");
}
