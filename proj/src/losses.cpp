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

#include "dpconvex/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace dpconvex {
namespace {

void check_dims(const Vector& w, const Example& z) {
  if (w.size() != z.x.size()) {
    throw std::invalid_argument("weight/example dimension mismatch");
  }
}

void check_label(double y) {
  if (y != 1.0 && y != -1.0) {
    throw std::invalid_argument("classification label must be -1 or +1");
  }
}

// log(1 + e^t) without overflow for any t.
double softplus(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

// 1 / (1 + e^t), evaluated from the side that cannot overflow.
double sigmoid_neg(double t) {
  if (t >= 0.0) {
    double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

}  // namespace

std::string loss_family_name(LossFamily family) {
  switch (family) {
    case LossFamily::kSquared:
      return "squared";
    case LossFamily::kHinge:
      return "hinge";
    case LossFamily::kLogistic:
      return "logistic";
  }
  throw std::logic_error("unknown loss family");
}

LossEval squared_loss(const Vector& w, const Example& z) {
  check_dims(w, z);
  const double residual = w.dot(z.x) - z.y;
  LossEval out;
  out.value = residual * residual;
  out.subgradient = (2.0 * residual) * z.x;
  return out;
}

LossEval hinge_loss(const Vector& w, const Example& z) {
  check_dims(w, z);
  check_label(z.y);
  const double margin = z.y * (1.0 - w.dot(z.x));
  LossEval out;
  if (margin > 0.0) {
    out.value = margin;
    out.subgradient = -z.y * z.x;
  } else {
    // Inactive branch, and the zero subgradient tie-break at the kink.
    out.value = 0.0;
    out.subgradient = Vector::Zero(w.size());
  }
  return out;
}

LossEval logistic_loss(const Vector& w, const Example& z) {
  check_dims(w, z);
  check_label(z.y);
  const double t = z.y * w.dot(z.x);
  LossEval out;
  out.value = softplus(-t);
  out.subgradient = (-z.y * sigmoid_neg(t)) * z.x;
  return out;
}

LossEval LossSpec::eval(const Vector& w, const Example& z) const {
  LossEval out;
  switch (family) {
    case LossFamily::kSquared:
      out = squared_loss(w, z);
      break;
    case LossFamily::kHinge:
      out = hinge_loss(w, z);
      break;
    case LossFamily::kLogistic:
      out = logistic_loss(w, z);
      break;
  }
  if (tikhonov > 0.0) {
    out.value += 0.5 * tikhonov * w.squaredNorm();
    out.subgradient += tikhonov * w;
  }
  return out;
}

double LossSpec::value(const Vector& w, const Example& z) const {
  double v = 0.0;
  switch (family) {
    case LossFamily::kSquared: {
      const double r = w.dot(z.x) - z.y;
      v = r * r;
      break;
    }
    case LossFamily::kHinge: {
      check_dims(w, z);
      check_label(z.y);
      const double margin = z.y * (1.0 - w.dot(z.x));
      v = margin > 0.0 ? margin : 0.0;
      break;
    }
    case LossFamily::kLogistic: {
      check_dims(w, z);
      check_label(z.y);
      v = softplus(-z.y * w.dot(z.x));
      break;
    }
  }
  if (tikhonov > 0.0) v += 0.5 * tikhonov * w.squaredNorm();
  return v;
}

// Constants below are certified for ||x|| <= 1, |y| <= 1, ||w|| <= R.
// The Tikhonov term (t/2)||w||^2 adds tR to the Lipschitz constant, t to
// both the strong-convexity and smoothness constants, and tR^2/2 to B.

LossSpec LossSpec::squared(double radius) {
  LossSpec s;
  s.family = LossFamily::kSquared;
  s.radius = radius;
  s.rho = 2.0 * radius + 2.0;
  s.lambda_sc = 0.0;
  s.beta = 2.0;
  s.bound_B = (radius + 1.0) * (radius + 1.0);
  return s;
}

LossSpec LossSpec::hinge(double radius) {
  LossSpec s;
  s.family = LossFamily::kHinge;
  s.radius = radius;
  s.rho = 1.0;
  s.lambda_sc = 0.0;
  s.beta.reset();
  s.bound_B = 1.0 + radius;
  return s;
}

LossSpec LossSpec::logistic(double radius) {
  LossSpec s;
  s.family = LossFamily::kLogistic;
  s.radius = radius;
  s.rho = 1.0;
  s.lambda_sc = 0.0;
  s.beta = 0.25;
  s.bound_B = softplus(radius);
  return s;
}

LossSpec LossSpec::logistic_tikhonov(double radius, double t) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("tikhonov weight must be positive");
  }
  LossSpec s = logistic(radius);
  s.tikhonov = t;
  s.rho += t * radius;
  s.lambda_sc += t;
  s.beta = *s.beta + t;
  s.bound_B += 0.5 * t * radius * radius;
  return s;
}

LossSpec LossSpec::squared_tikhonov(double radius, double t) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("tikhonov weight must be positive");
  }
  LossSpec s = squared(radius);
  s.tikhonov = t;
  s.rho += t * radius;
  s.lambda_sc += t;
  s.beta = *s.beta + t;
  s.bound_B += 0.5 * t * radius * radius;
  return s;
}

}  // namespace dpconvex
