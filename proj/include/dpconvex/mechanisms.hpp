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

#ifndef DPCONVEX_MECHANISMS_HPP_
#define DPCONVEX_MECHANISMS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dpconvex/core.hpp"
#include "dpconvex/losses.hpp"
#include "dpconvex/noise.hpp"
#include "dpconvex/rng.hpp"
#include "dpconvex/solver.hpp"

namespace dpconvex {

enum class MechanismId {
  kOutputPerturbStronglyConvex,  // "out-sc"
  kOutputPerturbConvex,          // "out-convex"
  kRlsOut,                       // "rls-out"
  kObjectivePerturb,             // "obj-perturb"
  kFunctional,                   // "functional"
  kTuned,                        // "tuned"
  kDataIndependent,              // "data-indep"
  kOracle,                       // "oracle" (non-private reference)
  kNonPrivate,                   // "non-private"
};

std::string mechanism_name(MechanismId id);
MechanismId mechanism_from_name(const std::string& name);

struct MechanismConfig {
  PrivacyBudget budget{1.0};
  double lambda = 0.0;
  double R = 1.0;
  // Smoothness bound c on each pointwise Hessian, used by objective
  // perturbation (c = n * beta_per_example upper bound; squared: 2,
  // logistic: 0.25).
  double c = 0.0;
  // Tuner candidate grids; empty means the library defaults.
  std::vector<double> grid_R;
  std::vector<double> grid_lambda;
  SolverConfig solver;
  // Objective perturbation: draw the noise at rate eps'_p/2 instead of
  // eps_p/2 (the variant discussed alongside the main calibration).
  bool chaudhuri_beta = false;
  // Tuner: use (R+1)^2 in place of R^2 in the selection exponent.
  bool conservative_sensitivity = false;
  // Fault-injection hook for audits: scales the injected noise magnitude.
  // 1.0 is the correctly calibrated mechanism.
  double noise_multiplier = 1.0;
  // Test hook: skip the noise draw entirely (mechanism output equals its
  // non-private base point). Never used on real data.
  bool zero_noise = false;
};

// A released model plus enough metadata to reproduce and audit the release.
struct TrainedModel {
  Vector w;
  MechanismId mechanism = MechanismId::kNonPrivate;
  double epsilon = 0.0;
  double lambda = 0.0;
  double radius_R = 0.0;
  std::uint64_t rng_seed = 0;
  // Base point before noise, when the mechanism has one (test/debug only;
  // releasing it would void the privacy guarantee).
  Vector pre_noise_w;
  bool has_pre_noise = false;
  // Spherical-exponential rate actually used; 0 when not applicable.
  double noise_alpha = 0.0;
  ScalingRecord scaling;
  // JSON text with the remaining mechanism-specific parameters.
  std::string config_snapshot;
};

std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);
void write_model_file(const TrainedModel& model, const std::string& path);
TrainedModel read_model_file(const std::string& path);

// --- Noise calibration -----------------------------------------------------
//
// Each certified sensitivity below is widened by twice the solver tolerance
// (each of the two neighboring minimizers is located only to within tol), and
// the spherical-exponential rate is alpha = eps_p / (sensitivity + 2 tol).

// Output perturbation for strongly convex losses (lambda_sc > 0):
// sensitivity 4 rho / (lambda_sc n), alpha = lambda_sc n eps_p / (4 rho).
double output_sc_alpha(const LossSpec& loss, double eps_p, std::size_t n,
                       double solver_tol);

// Output perturbation for convex Lipschitz losses with explicit Tikhonov
// lambda and ball radius R: sensitivity 4 (rho + lambda R) / (lambda n).
double output_convex_alpha(const LossSpec& loss, double lambda, double R,
                           double eps_p, std::size_t n, double solver_tol);

// Specialized regularized least squares release: alpha =
// lambda n eps / (12 R + 8); requires lambda in (0, 1].
double rls_out_alpha(double lambda, double R, double eps_p, std::size_t n,
                     double solver_tol);

// Certified sensitivity bounds (without the solver slack), exposed for the
// audits.
double output_sc_sensitivity(const LossSpec& loss, std::size_t n);
double output_convex_sensitivity(const LossSpec& loss, double lambda, double R,
                                 std::size_t n);
double rls_out_sensitivity(double lambda, double R, std::size_t n);

// --- Training entry points -------------------------------------------------

TrainedModel train_output_perturb_sc(const Dataset& s, const LossSpec& loss,
                                     const MechanismConfig& cfg,
                                     RngStream& rng);
TrainedModel train_output_perturb_convex(const Dataset& s,
                                         const LossSpec& loss,
                                         const MechanismConfig& cfg,
                                         RngStream& rng);
TrainedModel train_rls_out(const Dataset& s, const MechanismConfig& cfg,
                           RngStream& rng);
// Objective perturbation calibration. The budget is first debited by a
// log-correction term depending on c/(n lambda); when the remainder is not
// positive, the fallback branch halves the budget instead and computes the
// extra regularization weight delta that would restore the accounting (delta
// is recorded in the model metadata).
struct ObjPerturbCalib {
  double eps_prime = 0.0;
  double delta = 0.0;
  double noise_beta = 0.0;  // spherical-exponential rate for the linear term
};
ObjPerturbCalib objective_perturb_calibration(double eps_p, std::size_t n,
                                              double lambda, double c,
                                              bool chaudhuri_beta);

TrainedModel train_objective_perturb(const Dataset& s, const LossSpec& loss,
                                     const MechanismConfig& cfg,
                                     RngStream& rng);
// Perturbed-histogram-free baseline: Laplace noise on the sufficient
// statistics A = (1/n) X^T X, b = (2/n) X^T y, then exact minimization of
// the induced quadratic over the ball.
TrainedModel train_functional(const Dataset& s, const MechanismConfig& cfg,
                              RngStream& rng);
// Non-private regularized ERM (reference point for attacks/audits).
TrainedModel train_non_private(const Dataset& s, const LossSpec& loss,
                               const MechanismConfig& cfg);

// Data-independent parameter rule: R = 1, lambda = sqrt(d / (n eps)).
std::pair<double, double> data_independent_params(Eigen::Index d,
                                                  std::size_t n, double eps);
// rls-out with the data-independent rule applied.
TrainedModel train_data_independent(const Dataset& s,
                                    const MechanismConfig& cfg,
                                    RngStream& rng);

// Private hyperparameter tuner: splits S into one chunk per (R, lambda)
// candidate plus one validation chunk, trains rls-out on each chunk, and
// picks candidate i with probability proportional to
// exp(-L_valid(w_i) eps_p / (2 R_max^2)).
TrainedModel tune_private(const Dataset& s, const MechanismConfig& cfg,
                          RngStream& rng);

// Default tuner grids.
std::vector<double> default_grid_lambda();
std::vector<double> default_grid_R_small();  // {0.25, 0.5, 1}
std::vector<double> default_grid_R_large();  // {0.5, 1, 2}

// Selection probabilities used by the tuner (exposed for tests).
std::vector<double> tuner_selection_probs(const std::vector<double>& losses,
                                          double eps_p, double R_max,
                                          bool conservative_sensitivity);

// Per-entry Laplace scale parameter used by the functional baseline.
double functional_sensitivity(Eigen::Index d, std::size_t n);

// Dispatch by id (used by the CLI and the harness).
TrainedModel train_mechanism(MechanismId id, const Dataset& s,
                             const LossSpec& loss, const MechanismConfig& cfg,
                             RngStream& rng);

}  // namespace dpconvex

#endif  // DPCONVEX_MECHANISMS_HPP_
