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

#ifndef DPCONVEX_ATTACKS_HPP_
#define DPCONVEX_ATTACKS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dpconvex/core.hpp"
#include "dpconvex/mechanisms.hpp"

namespace dpconvex {

// Model-inversion target: a block of feature slots holding one categorical
// attribute, the candidate slot assignments for that attribute, a prior over
// candidates, and the residual scale of the assumed Gaussian response model.
struct MiTarget {
  std::vector<Eigen::Index> target_indices;
  std::vector<Vector> candidates;  // each of length target_indices.size()
  std::vector<double> prior;       // same length as candidates
  double residual_sigma = 0.1;
};

// Log-score of candidate v given released weights w, the non-target
// features (target slots of `x` are overwritten), and the response:
//   log prior(v) - (y - <w, x(v)>)^2 / (2 sigma^2).
double mi_log_score(const Vector& w, const Vector& x, double y,
                    const MiTarget& target, std::size_t v);

// MAP inversion: argmax_v of mi_log_score. Near-ties (within 1e-15 of the
// max) resolve to the larger prior, then the lower candidate index.
std::size_t invert(const Vector& w, const Vector& x, double y,
                   const MiTarget& target);

// Fraction of examples whose target attribute the attacker recovers. The
// true candidate per example is read off the target slots of its features.
double mi_accuracy(const TrainedModel& model, const Dataset& validation,
                   const MiTarget& target);

// Residual scale sigma used by the attacker: standard deviation of the
// training residuals of a nearly unregularized ridge fit (lambda = 1e-6),
// floored at 1e-6.
double estimate_residual_sigma(const Dataset& train);

// Empirical candidate frequencies over a dataset's target slots.
std::vector<double> empirical_prior(const Dataset& data,
                                    const MiTarget& target);

struct AttackResult {
  double epsilon = 0.0;
  std::string mechanism;
  double mi_accuracy = 0.0;
  std::size_t n_validation = 0;
  std::uint64_t seed = 0;
};

std::string attack_result_to_json(const AttackResult& result);
AttackResult attack_result_from_json(const std::string& text);

}  // namespace dpconvex

#endif  // DPCONVEX_ATTACKS_HPP_
