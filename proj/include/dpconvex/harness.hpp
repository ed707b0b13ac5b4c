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

#ifndef DPCONVEX_HARNESS_HPP_
#define DPCONVEX_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dpconvex/attacks.hpp"
#include "dpconvex/core.hpp"
#include "dpconvex/mechanisms.hpp"
#include "dpconvex/rng.hpp"

namespace dpconvex {

// Synthetic regression population: continuous features uniform in a ball,
// one categorical attribute one-hot encoded (the model-inversion target),
// linear response with Gaussian noise clipped to [-1, 1].
struct SyntheticSpec {
  int d_continuous = 11;
  int snp_levels = 3;
  std::vector<double> prior = {0.25, 0.5, 0.25};
  Vector w_star;  // empty = library default for the resulting dimension
  double noise_sigma = 0.1;
  std::size_t n_train = 3000;
  std::size_t n_valid = 1000;

  int dim() const { return d_continuous + snp_levels; }
};

// Desk-scale default: d = 14 (11 continuous + 3 levels), n_train = 3000,
// n_valid = 1000.
SyntheticSpec default_synthetic_spec();
// Default ground truth for a spec: continuous block uniform, informative
// per-level weights (0.65, 0, -0.65 pattern), normalized to ||w*|| = 1.
Vector default_w_star(const SyntheticSpec& spec);

struct GeneratedData {
  Dataset train;
  Dataset valid;
  MiTarget target;  // carries the generator prior and noise_sigma
};

GeneratedData generate(const SyntheticSpec& spec, RngStream& rng);

// Mean squared prediction error over a validation set (scaled space).
double eval_mse(const TrainedModel& model, const Dataset& valid);

struct ExperimentRow {
  std::string mechanism;
  double epsilon = 0.0;
  std::size_t n = 0;
  std::size_t trial = 0;
  double mse = 0.0;          // NaN when the mechanism failed on this row
  double mi_accuracy = 0.0;  // NaN when the mechanism failed on this row
  std::uint64_t seed = 0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
};

// Harness defaults per mechanism at (d, n, eps): the data-independent rule
// for rls-out/data-indep, default grids for the tuner, R = 100 for the
// functional baseline (matching its role as an unclamped comparator).
MechanismConfig harness_mechanism_config(MechanismId id, Eigen::Index d,
                                         std::size_t n, double eps);

// One row per (mechanism, eps, trial): fresh data + model per trial stream,
// MSE and model-inversion accuracy on the shared validation split. Rows for
// failed mechanism runs carry NaN metrics and the run continues.
ExperimentResult run_tradeoff(const std::vector<MechanismId>& mechanisms,
                              const std::vector<double>& epsilon_grid,
                              const SyntheticSpec& spec, std::size_t trials,
                              std::uint64_t master_seed);

// Subsamples the training pool at each rate (seeded permutation, first
// floor(rate*n) rows), trains `mechanism` (config from `proto`), evaluates
// MSE and MI accuracy. Rates that would leave fewer than d examples are
// rejected.
ExperimentResult run_size_sweep(MechanismId mechanism,
                                const MechanismConfig& proto, double epsilon,
                                const SyntheticSpec& spec,
                                const std::vector<double>& sample_rates,
                                std::size_t trials,
                                std::uint64_t master_seed);

// Exhaustive non-private search over R in {0.25, 0.5, 1, 2} and 50
// arithmetic lambda steps over [0.001, 0.5], with the data-independent
// (lambda, R) injected into the grid; returns the rls-out release with the
// best validation MSE. Non-private reference: the search reuses validation
// data and spends no budget on selection.
TrainedModel oracle_search(const Dataset& train, const Dataset& valid,
                           double epsilon, RngStream& rng);

// Deterministic CSV persistence; numeric fields round-trip exactly.
void write_results_csv(const ExperimentResult& result, std::ostream& out);
void write_results_csv_file(const ExperimentResult& result,
                            const std::string& path);
ExperimentResult read_results_csv(std::istream& in);
ExperimentResult read_results_csv_file(const std::string& path);

}  // namespace dpconvex

#endif  // DPCONVEX_HARNESS_HPP_
