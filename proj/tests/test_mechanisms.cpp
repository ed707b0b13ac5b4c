// Copyright 2026 The dpconvex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpconvex/mechanisms.hpp"

#include <cmath>
#include <vector>

#include "dpconvex/rng.hpp"
#include "dpconvex/solver.hpp"
#include "doctest.h"
#include "json.hpp"

namespace dpconvex {
namespace {

bool exactly_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

Dataset random_regression(RngStream& rng, int n, int d) {
  std::vector<Example> rows;
  for (int i = 0; i < n; ++i) {
    Example z;
    z.x = Vector(d);
    for (int j = 0; j < d; ++j) z.x(j) = rng.normal();
    double norm = z.x.norm();
    if (norm > 1.0) z.x /= norm;
    z.y = 2.0 * rng.uniform() - 1.0;
    rows.push_back(z);
  }
  return Dataset(rows);
}

Dataset random_classification(RngStream& rng, int n, int d) {
  std::vector<Example> rows;
  for (int i = 0; i < n; ++i) {
    Example z;
    z.x = Vector(d);
    for (int j = 0; j < d; ++j) z.x(j) = rng.normal();
    double norm = z.x.norm();
    if (norm > 1.0) z.x /= norm;
    z.y = rng.uniform() < 0.5 ? -1.0 : 1.0;
    rows.push_back(z);
  }
  return Dataset(rows);
}

TEST_SUITE("mechanisms") {

TEST_CASE("convex output perturbation rate at (0.1, 1000, 1, rho=4, R=1)") {
  LossSpec loss = LossSpec::squared(1.0);  // rho = 4 at R = 1
  double alpha = output_convex_alpha(loss, 0.1, 1.0, 1.0, 1000, 1e-6);
  // 100/16.4 up to the solver-tolerance widening of the sensitivity.
  CHECK(std::abs(alpha - 100.0 / 16.4) <= 1e-3);
  // Calibration identity: alpha spends exactly the budget on the widened
  // sensitivity.
  double sens = output_convex_sensitivity(loss, 0.1, 1.0, 1000);
  CHECK(alpha * (sens + 2e-6) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sens == doctest::Approx(4.0 * (4.0 + 0.1) / (0.1 * 1000)).epsilon(1e-12));
  // Rate is linear in n.
  double alpha10 = output_convex_alpha(loss, 0.1, 1.0, 1.0, 10000, 0.0);
  double alpha1 = output_convex_alpha(loss, 0.1, 1.0, 1.0, 1000, 0.0);
  CHECK(alpha10 == doctest::Approx(10.0 * alpha1).epsilon(1e-12));
}

TEST_CASE("strongly convex output perturbation uses 4 rho / (lambda_sc n)") {
  LossSpec loss = LossSpec::logistic_tikhonov(2.0, 0.5);  // rho = 1 + 1 = 2
  CHECK(output_sc_sensitivity(loss, 100) ==
        doctest::Approx(4.0 * 2.0 / (0.5 * 100)).epsilon(1e-12));
  double alpha = output_sc_alpha(loss, 0.5, 100, 0.0);
  CHECK(alpha == doctest::Approx(0.5 * 100 * 0.5 / (4.0 * 2.0)).epsilon(1e-12));
  LossSpec convex_only = LossSpec::logistic(1.0);
  CHECK_THROWS_AS(output_sc_alpha(convex_only, 0.5, 100, 0.0),
                  std::invalid_argument);
}

TEST_CASE("rls-out noise denominator is 12R+8 and dominates the generic rate") {
  CHECK(rls_out_sensitivity(0.5, 1.0, 100) ==
        doctest::Approx(20.0 / (0.5 * 100)).epsilon(1e-12));
  // 4(2R+2+lambda R) <= 12R+8 for lambda in (0,1], any R.
  for (double r : {0.5, 1.0, 2.0}) {
    for (int k = 1; k <= 20; ++k) {
      double lambda = k / 20.0;
      CHECK(4.0 * (2.0 * r + 2.0 + lambda * r) <= 12.0 * r + 8.0 + 1e-12);
    }
  }
}

TEST_CASE("rls-out rejects lambda outside (0, 1]") {
  RngStream rng(51, 0);
  Dataset s = random_regression(rng, 30, 3);
  MechanismConfig cfg;
  cfg.budget.epsilon = 1.0;
  cfg.R = 1.0;
  cfg.lambda = 1.5;
  CHECK_THROWS_AS(train_rls_out(s, cfg, rng), std::invalid_argument);
  cfg.lambda = 0.0;
  CHECK_THROWS_AS(train_rls_out(s, cfg, rng), std::invalid_argument);
  cfg.lambda = 1.0;
  CHECK_NOTHROW(train_rls_out(s, cfg, rng));
}

TEST_CASE("huge budget collapses the noise onto the base point") {
  RngStream data_rng(52, 0);
  Dataset s = random_regression(data_rng, 50, 3);
  MechanismConfig cfg;
  cfg.budget.epsilon = 1e6;
  cfg.lambda = 0.5;
  cfg.R = 1.0;

  RngStream rng(52, 1);
  TrainedModel m = train_rls_out(s, cfg, rng);
  CHECK(m.has_pre_noise);
  CHECK((m.w - m.pre_noise_w).norm() <= 1e-3);
  // The base point of rls-out is the constrained ridge solution.
  Vector ridge = solve_erm(s, LossSpec::squared(1.0), 0.5, 1.0);
  CHECK((m.pre_noise_w - ridge).norm() <= 1e-9);

  RngStream cls_rng(52, 5);
  Dataset labeled = random_classification(cls_rng, 50, 3);
  RngStream rng2(52, 2);
  LossSpec composite = LossSpec::logistic_tikhonov(2.0, 0.5);
  TrainedModel sc = train_output_perturb_sc(labeled, composite, cfg, rng2);
  CHECK((sc.w - sc.pre_noise_w).norm() <= 1e-3);
}

TEST_CASE("mechanisms are deterministic in the stream") {
  RngStream data_rng(53, 0);
  Dataset s = random_regression(data_rng, 40, 3);
  MechanismConfig cfg;
  cfg.budget.epsilon = 0.5;
  cfg.lambda = 0.5;
  cfg.R = 1.0;
  RngStream a(7, 3), b(7, 3);
  TrainedModel ma = train_rls_out(s, cfg, a);
  TrainedModel mb = train_rls_out(s, cfg, b);
  CHECK(exactly_equal(ma.w, mb.w));
  RngStream c(7, 4);
  TrainedModel mc = train_rls_out(s, cfg, c);
  CHECK(!exactly_equal(ma.w, mc.w));
}

TEST_CASE("objective perturbation calibration branches") {
  // Large n lambda: the log correction is tiny and Delta stays 0.
  ObjPerturbCalib big = objective_perturb_calibration(1.0, 3000, 0.1, 2.0,
                                                      false);
  double log_term = std::log1p(2.0 * 2.0 / 300.0 + 4.0 / (300.0 * 300.0));
  CHECK(std::abs(log_term - 0.0133) <= 1e-4);
  CHECK(big.eps_prime == doctest::Approx(1.0 - log_term).epsilon(1e-12));
  CHECK(big.delta == 0.0);
  CHECK(big.noise_beta == doctest::Approx(0.5).epsilon(1e-12));

  // Small n lambda: eps' would go negative, so the fallback branch fires.
  ObjPerturbCalib small = objective_perturb_calibration(0.1, 10, 0.01, 2.0,
                                                        false);
  CHECK(small.eps_prime == doctest::Approx(0.05).epsilon(1e-12));
  double expected_delta = 2.0 / (10.0 * (std::exp(0.025) - 1.0)) - 0.01;
  CHECK(small.delta == doctest::Approx(expected_delta).epsilon(1e-12));
  CHECK(small.delta > 0.0);

  // The alternate rate switch uses eps'/2 instead of eps/2.
  ObjPerturbCalib alt = objective_perturb_calibration(1.0, 3000, 0.1, 2.0,
                                                      true);
  CHECK(alt.noise_beta == doctest::Approx(alt.eps_prime / 2.0).epsilon(1e-12));
}

TEST_CASE("objective perturbation with zero noise equals plain ERM") {
  RngStream data_rng(54, 0);
  Dataset s = random_classification(data_rng, 60, 4);
  MechanismConfig cfg;
  cfg.budget.epsilon = 1.0;
  cfg.lambda = 0.2;
  cfg.R = 1.0;
  cfg.zero_noise = true;
  RngStream rng(54, 1);
  TrainedModel m = train_objective_perturb(s, LossSpec::logistic(1.0), cfg,
                                           rng);
  Vector erm = solve_erm(s, LossSpec::logistic(1.0), 0.2, 1.0);
  CHECK(exactly_equal(m.w, erm));

  cfg.zero_noise = false;
  RngStream r1(54, 2), r2(54, 2);
  TrainedModel p1 = train_objective_perturb(s, LossSpec::logistic(1.0), cfg,
                                            r1);
  TrainedModel p2 = train_objective_perturb(s, LossSpec::logistic(1.0), cfg,
                                            r2);
  CHECK(exactly_equal(p1.w, p2.w));
  CHECK(!exactly_equal(p1.w, m.w));
}

TEST_CASE("data-independent rule") {
  auto [l1, r1] = data_independent_params(14, 3000, 100.0);
  CHECK(r1 == 1.0);
  CHECK(std::abs(l1 - 0.0068) <= 1e-4);
  auto [l2, r2] = data_independent_params(14, 3000, 0.1);
  CHECK(r2 == 1.0);
  CHECK(std::abs(l2 - 0.216) <= 1e-3);
  auto [l4, r4] = data_independent_params(14, 12000, 0.1);
  CHECK(l4 == doctest::Approx(0.5 * l2).epsilon(1e-12));
  CHECK(r4 == 1.0);
}

TEST_CASE("tuner selection probabilities") {
  std::vector<double> uniform =
      tuner_selection_probs({0.3, 0.3, 0.3}, 1.0, 1.0, false);
  for (double p : uniform) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-12));

  // Losses {0, 2/eps} at R = 1: exponents {0, -1}.
  const double eps = 0.7;
  std::vector<double> two =
      tuner_selection_probs({0.0, 2.0 / eps}, eps, 1.0, false);
  CHECK(two[0] == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))).epsilon(1e-9));
  CHECK(two[1] == doctest::Approx(std::exp(-1.0) / (1.0 + std::exp(-1.0)))
                      .epsilon(1e-9));
  CHECK(std::abs(two[0] - 0.731) <= 1e-3);
  CHECK(std::abs(two[1] - 0.269) <= 1e-3);

  // Conservative sensitivity replaces R^2 = 1 by (R+1)^2 = 4.
  std::vector<double> cons =
      tuner_selection_probs({0.0, 8.0 / eps}, eps, 1.0, true);
  CHECK(cons[0] == doctest::Approx(two[0]).epsilon(1e-12));
}

TEST_CASE("tuner grids and chunking preconditions") {
  std::vector<double> lambdas = default_grid_lambda();
  REQUIRE(lambdas.size() == 8);
  CHECK(lambdas.front() == doctest::Approx(0.002).epsilon(1e-15));
  for (std::size_t k = 1; k < lambdas.size(); ++k) {
    CHECK(lambdas[k] == doctest::Approx(2.0 * lambdas[k - 1]).epsilon(1e-15));
  }
  CHECK(default_grid_R_small() == std::vector<double>{0.25, 0.5, 1.0});
  CHECK(default_grid_R_large() == std::vector<double>{0.5, 1.0, 2.0});

  RngStream data_rng(55, 0);
  Dataset tiny = random_regression(data_rng, 2, 2);
  MechanismConfig cfg;
  cfg.budget.epsilon = 1.0;
  cfg.grid_R = {0.5, 1.0};
  cfg.grid_lambda = {0.1};
  RngStream rng(55, 1);
  // m = 2 candidates need at least 3 chunks of >= 1 example.
  CHECK_THROWS_AS(tune_private(tiny, cfg, rng), std::invalid_argument);
}

TEST_CASE("tuner end-to-end is deterministic and uses grid parameters") {
  RngStream data_rng(56, 0);
  Dataset s = random_regression(data_rng, 60, 3);
  MechanismConfig cfg;
  cfg.budget.epsilon = 1.0;
  cfg.grid_R = {0.5, 1.0};
  cfg.grid_lambda = {0.1, 0.4};
  RngStream a(56, 1), b(56, 1);
  TrainedModel ma = tune_private(s, cfg, a);
  TrainedModel mb = tune_private(s, cfg, b);
  CHECK(ma.mechanism == MechanismId::kTuned);
  CHECK(exactly_equal(ma.w, mb.w));
  bool r_in_grid = ma.radius_R == 0.5 || ma.radius_R == 1.0;
  bool l_in_grid = ma.lambda == 0.1 || ma.lambda == 0.4;
  CHECK(r_in_grid);
  CHECK(l_in_grid);
}

TEST_CASE("functional baseline sensitivity and noiseless limit") {
  CHECK(functional_sensitivity(2, 100) == doctest::Approx(0.18).epsilon(1e-12));

  // Consistent data, huge budget: recovers the least-squares solution.
  RngStream data_rng(57, 0);
  const int n = 60, d = 3;
  Vector w_star(d);
  w_star << 0.4, -0.3, 0.2;
  std::vector<Example> rows;
  for (int i = 0; i < n; ++i) {
    Example z;
    z.x = Vector(d);
    for (int j = 0; j < d; ++j) z.x(j) = data_rng.normal();
    double norm = z.x.norm();
    if (norm > 1.0) z.x /= norm;
    z.y = w_star.dot(z.x);
    rows.push_back(z);
  }
  Dataset s(rows);
  MechanismConfig cfg;
  cfg.budget.epsilon = 1e9;
  cfg.R = 2.0;
  RngStream rng(57, 1);
  TrainedModel m = train_functional(s, cfg, rng);
  CHECK((m.w - w_star).norm() <= 1e-3);

  RngStream r1(57, 2), r2(57, 2);
  cfg.budget.epsilon = 0.5;
  CHECK(exactly_equal(train_functional(s, cfg, r1).w,
                      train_functional(s, cfg, r2).w));
}

TEST_CASE("model json serialization round-trips") {
  RngStream data_rng(58, 0);
  Dataset s = random_regression(data_rng, 30, 3);
  MechanismConfig cfg;
  cfg.budget.epsilon = 0.5;
  cfg.lambda = 0.5;
  cfg.R = 1.0;
  RngStream rng(58, 1);
  TrainedModel m = train_rls_out(s, cfg, rng);

  std::string text = model_to_json(m);
  nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j.at("mechanism") == "rls-out");
  CHECK(j.at("epsilon") == 0.5);
  CHECK(j.at("lambda") == 0.5);
  CHECK(j.at("R") == 1.0);
  CHECK(j.at("weights").size() == 3);
  CHECK(j.at("pre_noise_weights").size() == 3);
  CHECK(j.at("scaling").at("x_factor") == 1.0);

  TrainedModel back = model_from_json(text);
  CHECK(back.mechanism == MechanismId::kRlsOut);
  CHECK(exactly_equal(back.w, m.w));
  CHECK(exactly_equal(back.pre_noise_w, m.pre_noise_w));
  CHECK(back.epsilon == m.epsilon);
  CHECK(back.lambda == m.lambda);
  CHECK(back.radius_R == m.radius_R);
  CHECK(back.rng_seed == m.rng_seed);
  CHECK(back.noise_alpha == m.noise_alpha);
}

TEST_CASE("mechanism names round-trip") {
  for (MechanismId id :
       {MechanismId::kOutputPerturbStronglyConvex,
        MechanismId::kOutputPerturbConvex, MechanismId::kRlsOut,
        MechanismId::kObjectivePerturb, MechanismId::kFunctional,
        MechanismId::kTuned, MechanismId::kDataIndependent,
        MechanismId::kOracle, MechanismId::kNonPrivate}) {
    CHECK(mechanism_from_name(mechanism_name(id)) == id);
  }
  CHECK(mechanism_name(MechanismId::kRlsOut) == "rls-out");
  CHECK(mechanism_name(MechanismId::kDataIndependent) == "data-indep");
  CHECK_THROWS_AS(mechanism_from_name("bogus"), std::invalid_argument);
}

TEST_CASE("config validation") {
  RngStream data_rng(59, 0);
  Dataset s = random_regression(data_rng, 30, 3);
  RngStream rng(59, 1);
  MechanismConfig cfg;
  cfg.budget.epsilon = 0.0;
  cfg.lambda = 0.5;
  cfg.R = 1.0;
  CHECK_THROWS_AS(train_rls_out(s, cfg, rng), std::invalid_argument);
  cfg.budget.epsilon = 1.0;
  cfg.lambda = -0.1;
  CHECK_THROWS_AS(
      train_output_perturb_convex(s, LossSpec::squared(1.0), cfg, rng),
      std::invalid_argument);
  cfg.lambda = 0.0;
  CHECK_THROWS_AS(
      train_objective_perturb(s, LossSpec::squared(1.0), cfg, rng),
      std::invalid_argument);
}

TEST_CASE("noise multiplier scales the injected noise exactly") {
  RngStream data_rng(60, 0);
  Dataset s = random_regression(data_rng, 40, 3);
  MechanismConfig cfg;
  cfg.budget.epsilon = 0.5;
  cfg.lambda = 0.5;
  cfg.R = 1.0;
  RngStream a(60, 1), b(60, 1);
  TrainedModel full = train_rls_out(s, cfg, a);
  cfg.noise_multiplier = 0.5;
  TrainedModel half = train_rls_out(s, cfg, b);
  Vector full_noise = full.w - full.pre_noise_w;
  Vector half_noise = half.w - half.pre_noise_w;
  CHECK((half_noise - 0.5 * full_noise).norm() <= 1e-15);
}

TEST_CASE("train_mechanism dispatch covers the private trainers") {
  RngStream data_rng(61, 0);
  Dataset s = random_regression(data_rng, 40, 3);
  MechanismConfig cfg;
  cfg.budget.epsilon = 0.5;
  cfg.lambda = 0.5;
  cfg.R = 1.0;
  LossSpec loss = LossSpec::squared(1.0);
  for (MechanismId id :
       {MechanismId::kRlsOut, MechanismId::kOutputPerturbConvex,
        MechanismId::kObjectivePerturb, MechanismId::kFunctional,
        MechanismId::kDataIndependent, MechanismId::kNonPrivate}) {
    RngStream rng(61, static_cast<std::uint64_t>(id) + 10);
    TrainedModel m = train_mechanism(id, s, loss, cfg, rng);
    CHECK(m.mechanism == id);
    CHECK(m.w.size() == 3);
    CHECK(m.w.allFinite());
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace dpconvex
