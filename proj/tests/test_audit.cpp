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

#include "dpconvex/audit.hpp"

#include <cmath>

#include "dpconvex/rng.hpp"
#include "doctest.h"
#include "json.hpp"

namespace dpconvex {
namespace {

TEST_SUITE("audit") {

TEST_CASE("sensitivity audit passes on tight small instances") {
  AuditOptions opt;
  opt.replacement_grid = 8;

  RngStream r1(301, 0);
  AuditReport sq = audit_sensitivity(LossSpec::squared(1.0), 0.5, 1.0, 30, 3,
                                     2, r1, opt);
  CHECK(sq.pass);
  CHECK(sq.observed <= sq.bound);
  CHECK(sq.observed > 0.0);

  RngStream r2(301, 1);
  AuditReport hi = audit_sensitivity(LossSpec::hinge(1.0), 0.5, 1.0, 30, 3, 2,
                                     r2, opt);
  CHECK(hi.pass);

  RngStream r3(301, 2);
  AuditReport lo = audit_sensitivity(LossSpec::logistic(1.0), 0.5, 1.0, 30, 3,
                                     2, r3, opt);
  CHECK(lo.pass);
}

TEST_CASE("sensitivity audit with halved thresholds fails") {
  AuditOptions opt;
  opt.replacement_grid = 8;
  opt.fault_halve_bounds = true;
  RngStream rng(302, 0);
  AuditReport r = audit_sensitivity(LossSpec::squared(1.0), 0.5, 1.0, 30, 3,
                                    2, rng, opt);
  CHECK(!r.pass);
  nlohmann::json details = nlohmann::json::parse(r.details);
  CHECK(details.at("violations").size() > 0);
}

TEST_CASE("sensitivity shrinks roughly linearly in n") {
  AuditOptions opt;
  opt.replacement_grid = 6;
  RngStream a(303, 0);
  AuditReport small = audit_sensitivity(LossSpec::squared(1.0), 0.5, 1.0, 40,
                                        3, 2, a, opt);
  RngStream b(303, 1);
  AuditReport large = audit_sensitivity(LossSpec::squared(1.0), 0.5, 1.0, 400,
                                        3, 2, b, opt);
  REQUIRE(small.pass);
  REQUIRE(large.pass);
  double ratio = small.observed / large.observed;
  CHECK(ratio >= 5.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("density ratio audit verifies the calibration identity") {
  MechanismConfig cfg;
  cfg.lambda = 0.5;
  cfg.R = 1.0;
  AuditOptions opt;
  opt.replacement_grid = 6;

  for (double eps : {0.1, 0.5, 1.0}) {
    cfg.budget.epsilon = eps;
    RngStream rng(304, static_cast<std::uint64_t>(eps * 100));
    AuditReport r = audit_dp_ratio(MechanismId::kRlsOut,
                                   LossSpec::squared(1.0), cfg, 30, 3, 2, rng,
                                   opt);
    CHECK(r.pass);
    CHECK(r.observed == doctest::Approx(eps).epsilon(1e-9));
  }
}

TEST_CASE("density ratio audit detects halved noise") {
  MechanismConfig cfg;
  cfg.budget.epsilon = 0.5;
  cfg.lambda = 0.5;
  cfg.R = 1.0;
  AuditOptions opt;
  opt.replacement_grid = 6;
  opt.noise_multiplier = 0.5;
  RngStream rng(305, 0);
  AuditReport r = audit_dp_ratio(MechanismId::kRlsOut, LossSpec::squared(1.0),
                                 cfg, 30, 3, 2, rng, opt);
  CHECK(!r.pass);
  CHECK(r.observed == doctest::Approx(1.0).epsilon(1e-6));  // 2x the budget
}

TEST_CASE("density ratio audit with halved bound fails") {
  MechanismConfig cfg;
  cfg.budget.epsilon = 0.5;
  cfg.lambda = 0.5;
  cfg.R = 1.0;
  AuditOptions opt;
  opt.replacement_grid = 6;
  opt.fault_halve_bounds = true;
  RngStream rng(306, 0);
  AuditReport r = audit_dp_ratio(MechanismId::kRlsOut, LossSpec::squared(1.0),
                                 cfg, 30, 3, 2, rng, opt);
  CHECK(!r.pass);
}

TEST_CASE("noise tail audit") {
  RngStream a(307, 0);
  AuditReport high_d = audit_noise_tail(14, 1.0, 0.05, 10000, a);
  CHECK(high_d.pass);
  CHECK(high_d.observed <= 0.06);

  RngStream b(307, 1);
  AuditReport low_d = audit_noise_tail(1, 1.0, 0.5, 20000, b);
  CHECK(low_d.pass);
  // In d=1 the exceedance sits near gamma itself; the bound is tight here.
  CHECK(low_d.observed == doctest::Approx(0.5).epsilon(0.05));

  AuditOptions fault;
  fault.fault_halve_bounds = true;
  RngStream c(307, 2);
  AuditReport dual = audit_noise_tail(1, 1.0, 0.5, 20000, c, fault);
  CHECK(!dual.pass);

  RngStream d(307, 3);
  AuditReport vacuous = audit_noise_tail(3, 2.0, 1.0, 10000, d);
  CHECK(vacuous.pass);
}

TEST_CASE("stability audit passes and its bound linearizes in epsilon") {
  MechanismConfig cfg;
  cfg.budget.epsilon = 0.5;
  cfg.lambda = 0.5;
  cfg.R = 1.0;
  RngStream a(308, 0);
  AuditReport r = audit_ro_stability(MechanismId::kRlsOut,
                                     LossSpec::squared(1.0), cfg, 30, 3,
                                     10000, a);
  CHECK(r.pass);
  nlohmann::json dj = nlohmann::json::parse(r.details);
  CHECK(dj.at("rate_bound").get<double>() ==
        doctest::Approx(4.0 * (std::exp(0.5) - 1.0)).epsilon(1e-9));

  cfg.budget.epsilon = 0.01;
  RngStream b(308, 1);
  AuditReport tiny = audit_ro_stability(MechanismId::kRlsOut,
                                        LossSpec::squared(1.0), cfg, 30, 3,
                                        10000, b);
  CHECK(tiny.pass);
  nlohmann::json tj = nlohmann::json::parse(tiny.details);
  double rate = tj.at("rate_bound").get<double>();
  CHECK(rate == doctest::Approx(4.0 * 0.01).epsilon(0.01));
}

TEST_CASE("stability audit on identical neighbors observes zero") {
  MechanismConfig cfg;
  cfg.budget.epsilon = 0.5;
  cfg.lambda = 0.5;
  cfg.R = 1.0;
  AuditOptions opt;
  opt.identical_replacement = true;
  RngStream rng(309, 0);
  AuditReport r = audit_ro_stability(MechanismId::kRlsOut,
                                     LossSpec::squared(1.0), cfg, 30, 3,
                                     10000, rng, opt);
  CHECK(r.pass);
  CHECK(r.observed <= 1e-12);
}

TEST_CASE("stability audit rejects an uncalibrated mechanism") {
  MechanismConfig cfg;
  cfg.budget.epsilon = 0.5;
  cfg.lambda = 0.5;
  cfg.R = 1.0;
  AuditOptions opt;
  opt.noise_multiplier = 0.5;
  RngStream rng(310, 0);
  AuditReport r = audit_ro_stability(MechanismId::kRlsOut,
                                     LossSpec::squared(1.0), cfg, 30, 3,
                                     10000, rng, opt);
  CHECK(!r.pass);
  nlohmann::json dj = nlohmann::json::parse(r.details);
  CHECK(dj.at("calibration_ok").get<bool>() == false);
}

TEST_CASE("smooth training-error audit passes and scales with epsilon") {
  LossSpec loss = LossSpec::logistic_tikhonov(2.0, 0.5);
  MechanismConfig cfg;
  cfg.budget.epsilon = 1.0;
  cfg.lambda = 0.0;
  cfg.R = 2.0;
  RngStream a(311, 0);
  AuditReport r1 = audit_smooth_training_error(loss, cfg, 100, 3, 0.3, 200,
                                               a);
  CHECK(r1.pass);
  nlohmann::json j1 = nlohmann::json::parse(r1.details);

  cfg.budget.epsilon = 2.0;
  RngStream b(311, 1);
  AuditReport r2 = audit_smooth_training_error(loss, cfg, 100, 3, 0.3, 200,
                                               b);
  CHECK(r2.pass);
  nlohmann::json j2 = nlohmann::json::parse(r2.details);
  double ratio = j1.at("excess_bound").get<double>() /
                 j2.at("excess_bound").get<double>();
  CHECK(ratio == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("smooth audit fault dual fails on the tight 1-d instance") {
  // Strong Tikhonov makes the observed excess sit close to the certified
  // curvature, so halving the thresholds must be detected.
  LossSpec loss = LossSpec::logistic_tikhonov(0.25, 4.0);
  MechanismConfig cfg;
  cfg.budget.epsilon = 1.0;
  cfg.lambda = 0.0;
  cfg.R = 0.25;

  RngStream honest(312, 0);
  AuditReport ok = audit_smooth_training_error(loss, cfg, 50, 1, 0.5, 1000,
                                               honest);
  CHECK(ok.pass);
  CHECK(ok.observed > 0.2);  // the bound is genuinely tight here

  AuditOptions fault;
  fault.fault_halve_bounds = true;
  RngStream faulty(312, 0);
  AuditReport bad = audit_smooth_training_error(loss, cfg, 50, 1, 0.5, 1000,
                                                faulty, fault);
  CHECK(!bad.pass);
}

TEST_CASE("smooth audit with zero noise observes nothing") {
  LossSpec loss = LossSpec::logistic_tikhonov(2.0, 0.5);
  MechanismConfig cfg;
  cfg.budget.epsilon = 1.0;
  cfg.lambda = 0.0;
  cfg.R = 2.0;
  AuditOptions opt;
  opt.noise_multiplier = 0.0;
  RngStream rng(313, 0);
  AuditReport r = audit_smooth_training_error(loss, cfg, 100, 3, 0.1, 100,
                                              rng, opt);
  CHECK(r.pass);
  CHECK(r.observed == 0.0);
}

TEST_CASE("generalization trend improves with n and with epsilon") {
  RngStream a(314, 0);
  AuditReport r = audit_generalization_trend(
      MechanismId::kOutputPerturbConvex, LossFamily::kSquared, 0.5,
      {250, 1000, 4000}, 8, a);
  CHECK(r.pass);
  CHECK(r.observed <= 0.5);
  nlohmann::json dj = nlohmann::json::parse(r.details);
  auto means = dj.at("mean_excess").get<std::vector<double>>();
  REQUIRE(means.size() == 3);

  RngStream b(314, 1);
  AuditReport rich = audit_generalization_trend(
      MechanismId::kOutputPerturbConvex, LossFamily::kSquared, 5.0,
      {250, 1000, 4000}, 8, b);
  nlohmann::json rj = nlohmann::json::parse(rich.details);
  auto rich_means = rj.at("mean_excess").get<std::vector<double>>();
  CHECK(rich_means.front() < means.front());
}

TEST_CASE("audits are reproducible from the stream") {
  AuditOptions opt;
  opt.replacement_grid = 6;
  RngStream a(315, 7), b(315, 7);
  AuditReport r1 = audit_sensitivity(LossSpec::squared(1.0), 0.5, 1.0, 25, 3,
                                     2, a, opt);
  AuditReport r2 = audit_sensitivity(LossSpec::squared(1.0), 0.5, 1.0, 25, 3,
                                     2, b, opt);
  CHECK(r1.observed == r2.observed);
}

TEST_CASE("report json has the full schema") {
  AuditReport r;
  r.name = "sensitivity";
  r.observed = 0.125;
  r.bound = 0.72;
  r.trials = 20;
  r.pass = true;
  r.details = "{\"pairs\":100}";
  nlohmann::json j = nlohmann::json::parse(audit_report_to_json(r));
  CHECK(j.at("name") == "sensitivity");
  CHECK(j.at("observed") == 0.125);
  CHECK(j.at("bound") == 0.72);
  CHECK(j.at("trials") == 20);
  CHECK(j.at("pass") == true);
  CHECK(j.at("details").at("pairs") == 100);
}

TEST_CASE("audit suites aggregate and fault duals are inverted") {
  std::vector<AuditReport> reports = run_audit_suite("quick", 99);
  REQUIRE(!reports.empty());
  bool has_dual = false;
  for (const AuditReport& r : reports) {
    CHECK(r.pass);
    if (r.name.find("fault-dual") != std::string::npos) has_dual = true;
  }
  CHECK(has_dual);
  CHECK_THROWS_AS(run_audit_suite("bogus", 1), std::invalid_argument);
}

}  // TEST_SUITE

}  // namespace
}  // namespace dpconvex
