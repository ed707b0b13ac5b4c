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

#include "dpconvex/attacks.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpconvex/solver.hpp"
#include "json.hpp"

namespace dpconvex {

namespace {

void validate_target(const MiTarget& target, Eigen::Index dim) {
  if (target.candidates.empty()) {
    throw std::invalid_argument("target needs at least one candidate");
  }
  if (target.prior.size() != target.candidates.size()) {
    throw std::invalid_argument(
        "prior and candidate lists must have the same length");
  }
  if (target.target_indices.empty()) {
    throw std::invalid_argument("target needs at least one feature slot");
  }
  if (!(target.residual_sigma > 0.0)) {
    throw std::invalid_argument("residual sigma must be positive");
  }
  for (Eigen::Index idx : target.target_indices) {
    if (idx < 0 || idx >= dim) {
      throw std::invalid_argument("target slot out of range");
    }
  }
  const auto slots = static_cast<Eigen::Index>(target.target_indices.size());
  for (const Vector& c : target.candidates) {
    if (c.size() != slots) {
      throw std::invalid_argument(
          "candidate length must match the number of target slots");
    }
  }
  for (double p : target.prior) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("prior entries must be finite and >= 0");
    }
  }
}

double score_unchecked(const Vector& w, const Vector& x, double y,
                       const MiTarget& target, std::size_t v) {
  Vector probe = x;
  for (std::size_t k = 0; k < target.target_indices.size(); ++k) {
    probe(target.target_indices[k]) =
        target.candidates[v](static_cast<Eigen::Index>(k));
  }
  const double r = y - w.dot(probe);
  const double sigma = target.residual_sigma;
  return std::log(target.prior[v]) - r * r / (2.0 * sigma * sigma);
}

// Index of the candidate whose slot pattern equals the target slots of x.
std::size_t true_candidate(const Vector& x, const MiTarget& target) {
  for (std::size_t v = 0; v < target.candidates.size(); ++v) {
    bool match = true;
    for (std::size_t k = 0; k < target.target_indices.size(); ++k) {
      double want = target.candidates[v](static_cast<Eigen::Index>(k));
      if (std::abs(x(target.target_indices[k]) - want) > 1e-12) {
        match = false;
        break;
      }
    }
    if (match) return v;
  }
  throw std::invalid_argument(
      "example's target slots match no candidate pattern");
}

}  // namespace

double mi_log_score(const Vector& w, const Vector& x, double y,
                    const MiTarget& target, std::size_t v) {
  validate_target(target, x.size());
  if (v >= target.candidates.size()) {
    throw std::invalid_argument("candidate index out of range");
  }
  return score_unchecked(w, x, y, target, v);
}

std::size_t invert(const Vector& w, const Vector& x, double y,
                   const MiTarget& target) {
  validate_target(target, x.size());
  std::size_t winner = 0;
  double best = score_unchecked(w, x, y, target, 0);
  for (std::size_t v = 1; v < target.candidates.size(); ++v) {
    double s = score_unchecked(w, x, y, target, v);
    if (s > best + 1e-15) {
      winner = v;
      best = s;
    } else if (std::abs(s - best) <= 1e-15 &&
               target.prior[v] > target.prior[winner]) {
      winner = v;
      best = s;
    }
  }
  return winner;
}

double mi_accuracy(const TrainedModel& model, const Dataset& validation,
                   const MiTarget& target) {
  validate_target(target, validation.dim());
  if (validation.n() == 0) {
    throw std::invalid_argument("validation set must be non-empty");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < validation.n(); ++i) {
    const Example& z = validation[i];
    std::size_t truth = true_candidate(z.x, target);
    std::size_t guess = invert(model.w, z.x, z.y, target);
    if (guess == truth) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(validation.n());
}

double estimate_residual_sigma(const Dataset& train) {
  if (train.n() == 0) {
    throw std::invalid_argument("training set must be non-empty");
  }
  Vector w = ridge_closed_form(train, 1e-6);
  double total = 0.0;
  for (std::size_t i = 0; i < train.n(); ++i) {
    const Example& z = train[i];
    double r = z.y - w.dot(z.x);
    total += r * r;
  }
  double sigma = std::sqrt(total / static_cast<double>(train.n()));
  return std::max(sigma, 1e-6);
}

std::vector<double> empirical_prior(const Dataset& data,
                                    const MiTarget& target) {
  validate_target(target, data.dim());
  if (data.n() == 0) {
    throw std::invalid_argument("dataset must be non-empty");
  }
  std::vector<double> counts(target.candidates.size(), 0.0);
  for (std::size_t i = 0; i < data.n(); ++i) {
    counts[true_candidate(data[i].x, target)] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(data.n());
  return counts;
}

std::string attack_result_to_json(const AttackResult& result) {
  nlohmann::json j;
  j["epsilon"] = result.epsilon;
  j["mechanism"] = result.mechanism;
  j["mi_accuracy"] = result.mi_accuracy;
  j["n_validation"] = result.n_validation;
  j["seed"] = result.seed;
  return j.dump(2);
}

AttackResult attack_result_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  AttackResult r;
  r.epsilon = j.at("epsilon").get<double>();
  r.mechanism = j.at("mechanism").get<std::string>();
  r.mi_accuracy = j.at("mi_accuracy").get<double>();
  r.n_validation = j.at("n_validation").get<std::size_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

}  // namespace dpconvex
