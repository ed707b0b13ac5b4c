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

#ifndef DPCONVEX_SOLVER_HPP_
#define DPCONVEX_SOLVER_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

#include "dpconvex/core.hpp"
#include "dpconvex/losses.hpp"

namespace dpconvex {

enum class StepRule {
  // eta_t = 1/(lambda_eff * t); the classical schedule for strongly convex
  // non-smooth objectives.
  kStronglyConvexSchedule,
  // Constant eta = 1/beta projected gradient for smooth objectives.
  kFixedSmoothStep,
};

struct SolverConfig {
  std::size_t max_iters = 200000;
  double tol = 1e-6;  // Certified bound on ||w - w*||.
  StepRule step_rule = StepRule::kFixedSmoothStep;
  // Forces the iterative path even when the closed form applies, so the two
  // can be cross-checked.
  bool force_iterative = false;
};

// Raised when no iterate can be certified within tol; carries the best
// achieved accuracy bound for diagnostics.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_gap(achieved) {}
  double achieved_gap = 0.0;
};

// Regularized empirical risk at w:
//   (1/n) sum_i loss(w, z_i) + (lambda/2)||w||^2 [+ <linear, w>/n].
double erm_objective(const Dataset& s, const LossSpec& loss, double lambda,
                     const Vector& w, const Vector& linear_term = Vector());

// Exact minimizer of the ridge objective (squared loss, no ball constraint):
//   (1/n) sum (<w,x_i> - y_i)^2 + (lambda/2)||w||^2.
// Requires lambda > 0 or an invertible design.
Vector ridge_closed_form(const Dataset& s, double lambda);

// Minimizes erm_objective over the ball ||w|| <= R to accuracy
// ||w - w*|| <= tol. lambda = 0 is accepted only when the objective is
// strongly convex through the loss itself (squared family or tikhonov > 0).
// `linear_term` adds <linear_term, w>/n (used by objective perturbation).
Vector solve_erm(const Dataset& s, const LossSpec& loss, double lambda,
                 double R, const SolverConfig& config = {},
                 const Vector& linear_term = Vector());

// Euclidean projection onto the ball of radius R.
Vector project_ball(const Vector& w, double R);

}  // namespace dpconvex

#endif  // DPCONVEX_SOLVER_HPP_
