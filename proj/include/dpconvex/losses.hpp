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

#ifndef DPCONVEX_LOSSES_HPP_
#define DPCONVEX_LOSSES_HPP_

#include <optional>
#include <string>

#include "dpconvex/core.hpp"

namespace dpconvex {

enum class LossFamily { kSquared, kHinge, kLogistic };

std::string loss_family_name(LossFamily family);

// Pointwise loss value and one subgradient (the gradient when smooth).
struct LossEval {
  double value = 0.0;
  Vector subgradient;
};

// (<w,x> - y)^2.
LossEval squared_loss(const Vector& w, const Example& z);
// max{0, y * (1 - <w,x>)} with y in {-1,+1}; at the kink the zero
// subgradient is reported.
LossEval hinge_loss(const Vector& w, const Example& z);
// log(1 + exp(-y <w,x>)), evaluated with log1p/softplus stabilization.
LossEval logistic_loss(const Vector& w, const Example& z);

// A pointwise convex loss together with the constants certified for it on
// the ball of radius `radius` under ||x|| <= 1, |y| <= 1. An optional
// Tikhonov term (tikhonov/2)||w||^2 may be folded into the pointwise loss,
// which shifts every constant accordingly.
struct LossSpec {
  LossFamily family = LossFamily::kSquared;
  double radius = 1.0;    // Radius R of the feasible ball.
  double tikhonov = 0.0;  // Per-example Tikhonov weight folded into the loss.

  double rho = 0.0;        // Lipschitz constant over the ball.
  double lambda_sc = 0.0;  // Strong convexity modulus of the pointwise loss.
  std::optional<double> beta;  // Smoothness constant; empty if non-smooth.
  double bound_B = 0.0;        // sup of the loss over the ball.

  LossEval eval(const Vector& w, const Example& z) const;
  double value(const Vector& w, const Example& z) const;

  static LossSpec squared(double radius);
  static LossSpec hinge(double radius);
  static LossSpec logistic(double radius);
  // Logistic plus (t/2)||w||^2 per example: strongly convex and smooth.
  static LossSpec logistic_tikhonov(double radius, double t);
  // Squared plus (t/2)||w||^2 per example.
  static LossSpec squared_tikhonov(double radius, double t);
};

}  // namespace dpconvex

#endif  // DPCONVEX_LOSSES_HPP_
