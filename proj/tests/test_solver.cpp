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

#include "dpconvex/solver.hpp"

#include <cmath>
#include <cstring>
#include <vector>

#include "dpconvex/core.hpp"
#include "dpconvex/losses.hpp"
#include "dpconvex/rng.hpp"
#include "doctest.h"

namespace dpconvex {
namespace {

Example ex1(double x, double y) {
  Example z;
  z.x = Vector::Constant(1, x);
  z.y = y;
  return z;
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

TEST_SUITE("solver") {

TEST_CASE("1-D calculus fixture: argmin (w-1)^2 + w^2 = 0.5") {
  Dataset s({ex1(1.0, 1.0)});
  LossSpec loss = LossSpec::squared(1.0);

  Vector closed = ridge_closed_form(s, 2.0);
  CHECK(closed(0) == doctest::Approx(0.5).epsilon(1e-12));

  Vector w = solve_erm(s, loss, 2.0, 1.0);
  CHECK(std::abs(w(0) - 0.5) <= 1e-6);

  SolverConfig iterative;
  iterative.force_iterative = true;
  iterative.step_rule = StepRule::kFixedSmoothStep;
  Vector wi = solve_erm(s, loss, 2.0, 1.0, iterative);
  CHECK(std::abs(wi(0) - 0.5) <= 1e-6);

  iterative.step_rule = StepRule::kStronglyConvexSchedule;
  Vector ws = solve_erm(s, loss, 2.0, 1.0, iterative);
  CHECK(std::abs(ws(0) - 0.5) <= 1e-6);
}

TEST_CASE("projection becomes active at R = 0.25") {
  Dataset s({ex1(1.0, 1.0)});
  LossSpec loss = LossSpec::squared(0.25);
  Vector w = solve_erm(s, loss, 2.0, 0.25);
  CHECK(std::abs(w(0) - 0.25) <= 1e-6);
  CHECK(w.norm() <= 0.25 + 1e-12);
}

TEST_CASE("lambda = 0 with consistent data recovers the interpolant") {
  RngStream rng(31, 0);
  const int n = 30, d = 3;
  Vector w_star(d);
  w_star << 0.3, -0.2, 0.1;
  std::vector<Example> rows;
  for (int i = 0; i < n; ++i) {
    Example z;
    z.x = Vector(d);
    for (int j = 0; j < d; ++j) z.x(j) = rng.normal();
    double norm = z.x.norm();
    if (norm > 1.0) z.x /= norm;
    z.y = w_star.dot(z.x);
    rows.push_back(z);
  }
  Dataset s(rows);
  Vector w = solve_erm(s, LossSpec::squared(1.0), 0.0, 1.0);
  CHECK((w - w_star).norm() <= 1e-6);
}

TEST_CASE("ridge closed form: heavy regularization shrinks to zero") {
  RngStream rng(32, 0);
  Dataset s = random_regression(rng, 20, 3);
  Vector w = ridge_closed_form(s, 1e6);
  CHECK(w.norm() <= 1e-4);
}

TEST_CASE("closed form matches the iterative path within 1e-5") {
  RngStream rng(33, 0);
  Dataset s = random_regression(rng, 20, 3);
  const double lambda = 0.4;
  Vector closed = ridge_closed_form(s, lambda);
  REQUIRE(closed.norm() < 10.0);  // interior of the R=10 ball
  SolverConfig cfg;
  cfg.force_iterative = true;
  cfg.step_rule = StepRule::kFixedSmoothStep;
  Vector iter = solve_erm(s, LossSpec::squared(10.0), lambda, 10.0, cfg);
  CHECK((closed - iter).norm() <= 1e-5);
}

TEST_CASE("iterate stays inside the ball for every family") {
  RngStream rng(34, 0);
  const double r = 0.3;
  Dataset reg = random_regression(rng, 25, 3);
  Dataset cls = random_classification(rng, 25, 3);
  Vector w1 = solve_erm(reg, LossSpec::squared(r), 0.5, r);
  CHECK(w1.norm() <= r + 1e-12);
  Vector w2 = solve_erm(cls, LossSpec::hinge(r), 0.5, r);
  CHECK(w2.norm() <= r + 1e-12);
  Vector w3 = solve_erm(cls, LossSpec::logistic(r), 0.5, r);
  CHECK(w3.norm() <= r + 1e-12);
}

TEST_CASE("tol/10 rerun moves the solution by less than tol") {
  RngStream rng(35, 0);
  Dataset cls = random_classification(rng, 40, 3);
  struct Case {
    LossSpec loss;
    double lambda;
    StepRule rule;
  };
  std::vector<Case> cases = {
      {LossSpec::logistic(1.0), 0.3, StepRule::kFixedSmoothStep},
      {LossSpec::hinge(1.0), 0.5, StepRule::kStronglyConvexSchedule}};
  for (const Case& c : cases) {
    SolverConfig coarse;
    coarse.force_iterative = true;
    coarse.step_rule = c.rule;
    SolverConfig fine = coarse;
    fine.tol = coarse.tol / 10.0;
    Vector w = solve_erm(cls, c.loss, c.lambda, 1.0, coarse);
    Vector wf = solve_erm(cls, c.loss, c.lambda, 1.0, fine);
    CHECK((w - wf).norm() < coarse.tol);
  }
}

TEST_CASE("identical inputs give bitwise-identical outputs") {
  RngStream rng(36, 0);
  Dataset cls = random_classification(rng, 30, 4);
  SolverConfig cfg;
  cfg.force_iterative = true;
  Vector a = solve_erm(cls, LossSpec::logistic(1.0), 0.2, 1.0, cfg);
  Vector b = solve_erm(cls, LossSpec::logistic(1.0), 0.2, 1.0, cfg);
  REQUIRE(a.size() == b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    CHECK(std::memcmp(&a(i), &b(i), sizeof(double)) == 0);
  }
}

TEST_CASE("final objective never exceeds the objective at w0 = 0") {
  RngStream rng(37, 0);
  Dataset reg = random_regression(rng, 25, 3);
  Dataset cls = random_classification(rng, 25, 3);
  struct Case {
    const Dataset& data;
    LossSpec loss;
  };
  std::vector<Case> cases = {{reg, LossSpec::squared(1.0)},
                             {cls, LossSpec::hinge(1.0)},
                             {cls, LossSpec::logistic(1.0)}};
  for (const Case& c : cases) {
    Vector w = solve_erm(c.data, c.loss, 0.5, 1.0);
    double at_zero = erm_objective(c.data, c.loss, 0.5, Vector::Zero(3));
    double at_w = erm_objective(c.data, c.loss, 0.5, w);
    CHECK(at_w <= at_zero + 1e-12);
  }
}

TEST_CASE("hinge 1-D interior optimum at 0.5") {
  // All three margins stay active near the optimum, so the objective there
  // is (1/3)[2(1-w) + (1+0.5w)] + 0.5 w^2 = 1 - 0.5w + 0.5w^2, minimized at
  // w = 0.5 strictly inside the ball and away from every kink.
  Dataset s({ex1(1.0, 1.0), ex1(1.0, 1.0), ex1(-0.5, 1.0)});
  SolverConfig cfg;
  cfg.step_rule = StepRule::kStronglyConvexSchedule;
  Vector w = solve_erm(s, LossSpec::hinge(1.0), 1.0, 1.0, cfg);
  CHECK(std::abs(w(0) - 0.5) <= 1e-6);
}

TEST_CASE("logistic 1-D optimum matches an independent bisection") {
  // d/dw [log(1+e^{-w}) + w^2/2] = w - sigma(-w); root by bisection.
  Dataset s({ex1(1.0, 1.0)});
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    double deriv = mid - 1.0 / (1.0 + std::exp(mid));
    (deriv > 0.0 ? hi : lo) = mid;
  }
  double root = 0.5 * (lo + hi);
  Vector w = solve_erm(s, LossSpec::logistic(1.0), 1.0, 1.0);
  CHECK(std::abs(w(0) - root) <= 1e-6);
}

TEST_CASE("linear term shifts the squared-loss minimizer") {
  // n=1, x=1, y=0, lambda=2, nu=(-3): objective 2w^2 - 3w, argmin 0.75.
  Dataset s({ex1(1.0, 0.0)});
  Vector nu = Vector::Constant(1, -3.0);
  Vector w = solve_erm(s, LossSpec::squared(1.0), 2.0, 1.0, {}, nu);
  CHECK(std::abs(w(0) - 0.75) <= 1e-6);
  SolverConfig cfg;
  cfg.force_iterative = true;
  Vector wi = solve_erm(s, LossSpec::squared(1.0), 2.0, 1.0, cfg, nu);
  CHECK(std::abs(wi(0) - 0.75) <= 1e-6);
}

TEST_CASE("erm objective arithmetic") {
  Dataset s({ex1(1.0, 1.0), ex1(0.5, 0.0)});
  Vector w = Vector::Constant(1, 0.5);
  // (1/2)[(0.5-1)^2 + (0.25-0)^2] + (0.4/2) 0.25 = 0.15625 + 0.05.
  double obj = erm_objective(s, LossSpec::squared(1.0), 0.4, w);
  CHECK(obj == doctest::Approx(0.20625).epsilon(1e-12));
  Vector nu = Vector::Constant(1, 2.0);
  double with_linear = erm_objective(s, LossSpec::squared(1.0), 0.4, w, nu);
  CHECK(with_linear == doctest::Approx(0.20625 + 0.5).epsilon(1e-12));
}

TEST_CASE("lambda = 0 without strong convexity is rejected") {
  RngStream rng(38, 0);
  Dataset cls = random_classification(rng, 20, 3);
  CHECK_THROWS_AS(solve_erm(cls, LossSpec::hinge(1.0), 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_erm(cls, LossSpec::logistic(1.0), 0.0, 1.0),
                  std::invalid_argument);
  // Strong convexity through the loss itself is accepted.
  CHECK_NOTHROW(
      solve_erm(cls, LossSpec::logistic_tikhonov(1.0, 0.5), 0.0, 1.0));
}

TEST_CASE("unreachable tolerance reports the achieved gap") {
  RngStream rng(39, 0);
  Dataset cls = random_classification(rng, 20, 3);
  SolverConfig cfg;
  cfg.force_iterative = true;
  cfg.max_iters = 3;
  cfg.tol = 1e-12;
  try {
    solve_erm(cls, LossSpec::logistic(1.0), 0.3, 1.0, cfg);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.achieved_gap > 1e-12);
  }
}

TEST_CASE("project_ball") {
  Vector v(2);
  v << 3.0, 4.0;
  Vector p = project_ball(v, 1.0);
  CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p(0) == doctest::Approx(0.6).epsilon(1e-15));
  Vector inside = project_ball(v, 10.0);
  CHECK(inside == v);
}

}  // TEST_SUITE

}  // namespace
}  // namespace dpconvex
