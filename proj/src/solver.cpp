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

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

namespace dpconvex {
namespace {

// Margins this close to a hinge kink make the active set ambiguous; the
// exact-polish step refuses to certify across them.
constexpr double kKinkGuard = 1e-9;

struct Problem {
  const Dataset& s;
  const LossSpec& loss;
  double lambda;         // explicit Tikhonov outside the loss
  const Vector* linear;  // optional extra <linear, w>/n term

  double value(const Vector& w) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i) sum += loss.value(w, s[i]);
    double v = sum / static_cast<double>(s.n()) +
               0.5 * lambda * w.squaredNorm();
    if (linear) v += linear->dot(w) / static_cast<double>(s.n());
    return v;
  }

  Vector subgradient(const Vector& w) const {
    Vector g = Vector::Zero(w.size());
    for (std::size_t i = 0; i < s.n(); ++i) {
      g += loss.eval(w, s[i]).subgradient;
    }
    g /= static_cast<double>(s.n());
    g += lambda * w;
    if (linear) g += *linear / static_cast<double>(s.n());
    return g;
  }
};

void check_finite(const Vector& w) {
  if (!w.allFinite()) throw SolverError("non-finite iterate", 0.0);
}

Vector ridge_solve(const Dataset& s, double lambda_cf, const Vector* linear) {
  const auto n = static_cast<double>(s.n());
  Matrix x = s.feature_matrix();
  Matrix a = (2.0 / n) * (x.transpose() * x);
  a.diagonal().array() += lambda_cf;
  Vector b = (2.0 / n) * (x.transpose() * s.response_vector());
  if (linear) b -= *linear / n;
  Eigen::LDLT<Matrix> ldlt(a);
  if (ldlt.info() != Eigen::Success) {
    throw std::invalid_argument("singular normal equations");
  }
  Vector w = ldlt.solve(b);
  // LDLT does not fail reliably on rank-deficient input; verify directly.
  if ((a * w - b).norm() > 1e-8 * (b.norm() + 1.0)) {
    throw std::invalid_argument("singular normal equations");
  }
  return w;
}

// Fixed-step projected gradient with an a-posteriori distance certificate:
// with eta = 1/beta_obj and gradient mapping G = (w - w+)/eta, the vector
// G - grad F(w) + grad F(w+) is a subgradient of F + ball indicator at w+
// of norm <= 2||G||, so strong convexity gives ||w+ - w*|| <= 2||G||/lambda.
Vector pgd_certified(const Problem& p, double R, double lambda_eff,
                     double beta_obj, Vector w, const SolverConfig& cfg,
                     std::size_t budget) {
  const double eta = 1.0 / beta_obj;
  double cert = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < budget; ++it) {
    Vector g = p.subgradient(w);
    Vector next = project_ball(w - eta * g, R);
    check_finite(next);
    cert = 2.0 * (w - next).norm() / (eta * lambda_eff);
    w = next;
    if (cert <= cfg.tol) return w;
  }
  throw SolverError("projected gradient did not reach tolerance", cert);
}

// Exact minimizer over the region where the hinge active set is fixed, if a
// guard-consistent region containing it exists. Returns true on success.
bool hinge_polish(const Problem& p, double R, double lambda_eff,
                  const Vector& start, Vector* out) {
  const auto n = static_cast<double>(p.s.n());
  const Eigen::Index d = p.s.dim();
  std::vector<bool> active(p.s.n());
  Vector w = start;
  for (int round = 0; round < 50; ++round) {
    for (std::size_t i = 0; i < p.s.n(); ++i) {
      active[i] = p.s[i].y * (1.0 - w.dot(p.s[i].x)) > kKinkGuard;
    }
    Vector u = Vector::Zero(d);
    for (std::size_t i = 0; i < p.s.n(); ++i) {
      if (active[i]) u += p.s[i].y * p.s[i].x;
    }
    if (p.linear) u -= *p.linear;
    Vector cand = u / (n * lambda_eff);
    if (cand.norm() > R) {
      if (u.norm() < 1e-300) return false;
      cand = (R / u.norm()) * u;
    }
    bool consistent = true;
    for (std::size_t i = 0; i < p.s.n() && consistent; ++i) {
      double margin = p.s[i].y * (1.0 - cand.dot(p.s[i].x));
      if (std::abs(margin) <= kKinkGuard) {
        consistent = false;  // optimum pinned at a kink; cannot certify
      } else if ((margin > 0.0) != active[i]) {
        consistent = false;
      }
    }
    if (consistent) {
      *out = cand;
      return true;
    }
    w = cand;
  }
  return false;
}

Vector solve_hinge(const Problem& p, double R, double lambda_eff,
                   const SolverConfig& cfg) {
  const auto n = static_cast<double>(p.s.n());
  Vector w = Vector::Zero(p.s.dim());
  Vector best = w;
  double best_obj = p.value(w);
  Vector polished;
  if (hinge_polish(p, R, lambda_eff, best, &polished)) return polished;
  std::size_t done = 0, epoch = 512;
  while (done < cfg.max_iters) {
    const std::size_t target = std::min(cfg.max_iters, done + epoch);
    for (std::size_t t = done + 1; t <= target; ++t) {
      Vector g = p.subgradient(w);
      w = project_ball(w - g / (lambda_eff * static_cast<double>(t)), R);
      check_finite(w);
      double obj = p.value(w);
      if (obj < best_obj) {
        best_obj = obj;
        best = w;
      }
    }
    done = target;
    epoch *= 2;
    if (hinge_polish(p, R, lambda_eff, best, &polished)) return polished;
  }
  // Certification failed; report the schedule's theoretical distance bound.
  double g_bound = p.loss.rho + lambda_eff * R;
  if (p.linear) g_bound += p.linear->norm() / n;
  const auto t = static_cast<double>(cfg.max_iters);
  double achieved =
      g_bound / lambda_eff * std::sqrt((1.0 + std::log(t)) / t);
  throw SolverError("hinge solve did not certify the active set", achieved);
}

double data_strong_convexity(const Dataset& s) {
  const auto n = static_cast<double>(s.n());
  Matrix x = s.feature_matrix();
  Matrix a = (2.0 / n) * (x.transpose() * x);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  return eig.eigenvalues().minCoeff();
}

}  // namespace

Vector project_ball(const Vector& w, double R) {
  const double norm = w.norm();
  if (norm <= R) return w;
  return (R / norm) * w;
}

double erm_objective(const Dataset& s, const LossSpec& loss, double lambda,
                     const Vector& w, const Vector& linear_term) {
  if (s.n() == 0) throw std::invalid_argument("empty dataset");
  const Vector* linear = linear_term.size() > 0 ? &linear_term : nullptr;
  if (linear && linear_term.size() != s.dim()) {
    throw std::invalid_argument("linear term has wrong dimension");
  }
  Problem p{s, loss, lambda, linear};
  return p.value(w);
}

Vector ridge_closed_form(const Dataset& s, double lambda) {
  if (s.n() == 0) throw std::invalid_argument("empty dataset");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be finite and >= 0");
  }
  return ridge_solve(s, lambda, nullptr);
}

Vector solve_erm(const Dataset& s, const LossSpec& loss, double lambda,
                 double R, const SolverConfig& config,
                 const Vector& linear_term) {
  if (s.n() == 0) throw std::invalid_argument("empty dataset");
  if (s.dim() < 1) throw std::invalid_argument("empty feature space");
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw std::invalid_argument("radius must be positive and finite");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be finite and >= 0");
  }
  if (!(config.tol > 0.0) || config.max_iters < 1) {
    throw std::invalid_argument("invalid solver configuration");
  }
  const Vector* linear = linear_term.size() > 0 ? &linear_term : nullptr;
  if (linear && linear_term.size() != s.dim()) {
    throw std::invalid_argument("linear term has wrong dimension");
  }

  Problem p{s, loss, lambda, linear};
  const double lambda_total = lambda + loss.lambda_sc;

  if (loss.family == LossFamily::kHinge) {
    if (!(lambda_total > 0.0)) {
      throw std::invalid_argument(
          "hinge objective needs lambda > 0 for strong convexity");
    }
    return solve_hinge(p, R, lambda_total, config);
  }

  // Exact path for the squared family (Tikhonov folded into the system).
  if (loss.family == LossFamily::kSquared && !config.force_iterative) {
    try {
      Vector w = ridge_solve(s, lambda_total, linear);
      if (w.norm() < R * (1.0 - 1e-12)) return w;
    } catch (const std::invalid_argument&) {
      // Singular normal equations; decided below by the iterative path.
    }
  }

  double lambda_eff = lambda_total;
  if (!(lambda_eff > 0.0)) {
    // lambda = 0 is admissible only when the data makes the squared
    // objective strongly convex on its own.
    if (loss.family != LossFamily::kSquared) {
      throw std::invalid_argument(
          "lambda = 0 requires a strongly convex loss");
    }
    lambda_eff = data_strong_convexity(s);
    if (!(lambda_eff > 1e-12)) {
      throw std::invalid_argument(
          "squared objective with lambda = 0 is not strongly convex");
    }
  }
  if (!loss.beta.has_value()) {
    throw std::logic_error("smooth path requires a smoothness constant");
  }
  const double beta_obj = *loss.beta + lambda;

  Vector w0 = Vector::Zero(s.dim());
  std::size_t budget = config.max_iters;
  if (config.step_rule == StepRule::kStronglyConvexSchedule) {
    // Honor the schedule for a short warm start, keeping the best objective
    // value seen, then let the certified fixed-step phase finish.
    const std::size_t warm = std::min<std::size_t>(200, config.max_iters / 2);
    Vector w = w0;
    double best_obj = p.value(w0);
    for (std::size_t t = 1; t <= warm; ++t) {
      Vector g = p.subgradient(w);
      w = project_ball(w - g / (lambda_eff * static_cast<double>(t)), R);
      check_finite(w);
      double obj = p.value(w);
      if (obj < best_obj) {
        best_obj = obj;
        w0 = w;
      }
    }
    budget -= warm;
  }
  return pgd_certified(p, R, lambda_eff, beta_obj, w0, config, budget);
}

}  // namespace dpconvex
