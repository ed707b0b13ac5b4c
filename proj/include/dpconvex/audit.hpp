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

#ifndef DPCONVEX_AUDIT_HPP_
#define DPCONVEX_AUDIT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dpconvex/core.hpp"
#include "dpconvex/losses.hpp"
#include "dpconvex/mechanisms.hpp"
#include "dpconvex/rng.hpp"

namespace dpconvex {

// Result of one empirical verification oracle. For upper-bound audits,
// pass <=> observed <= bound; subsidiary per-neighbor checks can also fail
// the audit, and are then itemized in `details` (JSON text).
struct AuditReport {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  std::size_t trials = 0;
  bool pass = false;
  std::string details;
};

std::string audit_report_to_json(const AuditReport& report);

struct AuditOptions {
  // Fault-injection dual: every audited threshold (the reported bound and
  // all per-neighbor thresholds) is halved. A sound audit must then fail on
  // the tight instances; this proves the audit has teeth.
  bool fault_halve_bounds = false;
  // Fault-injection dual for mechanism audits: scales the injected noise
  // (0.5 releases half the calibrated noise, voiding the DP guarantee).
  double noise_multiplier = 1.0;
  // Replacement examples tried per index in neighbor enumerations.
  std::size_t replacement_grid = 20;
  // Degenerate-pair mode for the stability audit: the replacement equals the
  // replaced example, so both runs see identical data.
  bool identical_replacement = false;
  SolverConfig solver;
};

// Max over sampled neighbors of ||w_S - w_S'|| against
// 4 (rho + lambda R) / (lambda n) + 2 tol. Also asserts, on every audited
// pair, the two inequalities the rate is composed from (each with an
// additive slack proportional to the solver tolerance):
//   lambda_eff/2 ||u - v||^2 <= obj_S(u) - obj_S(v) + slack
//   obj_S(u) - obj_S(v) <= [l(u,z_i) - l(u,z') + l(v,z') - l(v,z_i)]/n + slack
// where v minimizes the regularized objective on S and u on S^(i,z').
AuditReport audit_sensitivity(const LossSpec& loss, double lambda, double R,
                              std::size_t n, int d, std::size_t trials,
                              RngStream& rng, const AuditOptions& opt = {});

// Analytic density-ratio audit for output-perturbation mechanisms:
// alpha_eff * ||w_S - w_S'|| <= eps_p + alpha_eff * 2 tol over sampled
// neighbors, plus the calibration identity
// alpha_eff * (certified sensitivity + 2 tol) <= eps_p, which bounds the
// worst-case log density ratio over all neighbors.
AuditReport audit_dp_ratio(MechanismId mechanism, const LossSpec& loss,
                           const MechanismConfig& cfg, std::size_t n, int d,
                           std::size_t trials, RngStream& rng,
                           const AuditOptions& opt = {});

// Empirical exceedance of the norm tail radius d ln(d/gamma) / alpha against
// gamma + 3 binomial standard errors.
AuditReport audit_noise_tail(int d, double alpha, double gamma,
                             std::size_t samples, RngStream& rng,
                             const AuditOptions& opt = {});

// Replace-one stability of the mechanism's expected loss on a grid of test
// points: |E l(A(S), z) - E l(A(S'), z)| <= B (e^eps - 1) + 3 SE, Monte
// Carlo over mechanism randomness with common random numbers across the
// pair. Losses are evaluated at the projection of the output onto the
// R-ball, where B is certified. The mechanism must first pass its
// calibration identity (it is assumed eps_p-DP).
AuditReport audit_ro_stability(MechanismId mechanism, const LossSpec& loss,
                               const MechanismConfig& cfg, std::size_t n,
                               int d, std::size_t mc_samples, RngStream& rng,
                               const AuditOptions& opt = {});

// Frequency with which the perturbed training loss exceeds
// L_S(w_bar) + beta (4 d ln(d/gamma) rho_eff / (lambda_eff n eps_p))^2,
// compared against gamma + 3 binomial standard errors.
AuditReport audit_smooth_training_error(const LossSpec& loss,
                                        const MechanismConfig& cfg,
                                        std::size_t n, int d, double gamma,
                                        std::size_t trials, RngStream& rng,
                                        const AuditOptions& opt = {});

// Mean excess risk versus n: non-increasing across n_grid up to a 10% slack
// per step, and the largest-n mean at most half the smallest-n mean when n
// grows 16x. Risk is measured on a large held-out sample from the same
// generator. Mechanism parameters follow the data-independent rule per n.
AuditReport audit_generalization_trend(MechanismId mechanism,
                                       LossFamily family, double epsilon,
                                       const std::vector<std::size_t>& n_grid,
                                       std::size_t trials, RngStream& rng,
                                       const AuditOptions& opt = {});

// Named suites for the CLI; returns one report per audit in the suite.
// Recognized names: sensitivity, dp-ratio, noise-tail, ro-stability,
// smooth, generalization, quick, all.
std::vector<AuditReport> run_audit_suite(const std::string& suite,
                                         std::uint64_t master_seed);

}  // namespace dpconvex

#endif  // DPCONVEX_AUDIT_HPP_
