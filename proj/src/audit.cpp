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

#include "dpconvex/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dpconvex/noise.hpp"
#include "dpconvex/solver.hpp"
#include "json.hpp"

namespace dpconvex {

namespace {

using nlohmann::json;

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

Example random_example(int d, LossFamily family, RngStream& rng) {
  Example z;
  Vector dir = sample_direction(d, rng);
  double radius = std::pow(rng.uniform_pos(), 1.0 / static_cast<double>(d));
  z.x = dir * radius;
  if (family == LossFamily::kSquared) {
    z.y = 2.0 * rng.uniform() - 1.0;
  } else {
    z.y = rng.uniform() < 0.5 ? -1.0 : 1.0;
  }
  return z;
}

Dataset random_dataset(std::size_t n, int d, LossFamily family,
                       RngStream& rng) {
  std::vector<Example> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back(random_example(d, family, rng));
  }
  return Dataset(std::move(rows));
}

Vector unit_direction_of(const Vector& x, int d) {
  if (x.norm() > 1e-12) return x / x.norm();
  return Vector::Unit(d, 0);
}

// Replacements per index: random draws plus four extreme replacements with
// unit-norm features aligned with +-x_i and labels at both ends, which flip
// the residual or margin sign maximally.
std::vector<Example> build_replacements(const Example& z_i, int d,
                                        std::size_t grid, LossFamily family,
                                        RngStream& rng) {
  std::vector<Example> out;
  out.reserve(grid);
  const std::size_t randoms = grid > 4 ? grid - 4 : grid;
  for (std::size_t g = 0; g < randoms; ++g) {
    out.push_back(random_example(d, family, rng));
  }
  if (grid > 4) {
    Vector unit = unit_direction_of(z_i.x, d);
    for (double sign : {1.0, -1.0}) {
      for (double label : {1.0, -1.0}) {
        Example z;
        z.x = sign * unit;
        z.y = label;
        out.push_back(z);
      }
    }
  }
  return out;
}

Vector solve_with_context(const Dataset& s, const LossSpec& loss,
                          double lambda, double R, const SolverConfig& solver,
                          const std::string& context) {
  try {
    return solve_erm(s, loss, lambda, R, solver);
  } catch (const SolverError& e) {
    throw std::runtime_error(context + ": " + e.what());
  }
}

// Parameters of an output-perturbation release, resolved per mechanism id.
struct OutputMechanismSpec {
  LossSpec loss;
  double lambda = 0.0;
  double radius = 0.0;
  double sensitivity = 0.0;
  double alpha = 0.0;
};

OutputMechanismSpec resolve_output_mechanism(MechanismId id,
                                             const LossSpec& loss,
                                             const MechanismConfig& cfg,
                                             std::size_t n, int d) {
  const double eps = cfg.budget.epsilon;
  const double tol = cfg.solver.tol;
  switch (id) {
    case MechanismId::kOutputPerturbStronglyConvex:
      return {loss, 0.0, loss.radius, output_sc_sensitivity(loss, n),
              output_sc_alpha(loss, eps, n, tol)};
    case MechanismId::kOutputPerturbConvex:
      return {loss, cfg.lambda, cfg.R,
              output_convex_sensitivity(loss, cfg.lambda, cfg.R, n),
              output_convex_alpha(loss, cfg.lambda, cfg.R, eps, n, tol)};
    case MechanismId::kRlsOut:
      return {LossSpec::squared(cfg.R), cfg.lambda, cfg.R,
              rls_out_sensitivity(cfg.lambda, cfg.R, n),
              rls_out_alpha(cfg.lambda, cfg.R, eps, n, tol)};
    case MechanismId::kDataIndependent: {
      auto [lambda, radius] = data_independent_params(d, n, eps);
      lambda = std::min(lambda, 1.0);
      return {LossSpec::squared(radius), lambda, radius,
              rls_out_sensitivity(lambda, radius, n),
              rls_out_alpha(lambda, radius, eps, n, tol)};
    }
    default:
      throw std::invalid_argument(
          "this audit requires an output-perturbation mechanism");
  }
}

json truncated_violations(const json& violations) {
  if (!violations.is_array() || violations.size() <= 10) return violations;
  json out = json::array();
  for (std::size_t i = 0; i < 10; ++i) out.push_back(violations[i]);
  out.push_back({{"truncated", violations.size() - 10}});
  return out;
}

}  // namespace

std::string audit_report_to_json(const AuditReport& report) {
  json j;
  j["name"] = report.name;
  j["observed"] = report.observed;
  j["bound"] = report.bound;
  j["trials"] = report.trials;
  j["pass"] = report.pass;
  if (report.details.empty()) {
    j["details"] = json::object();
  } else {
    json parsed = json::parse(report.details, nullptr, false);
    j["details"] = parsed.is_discarded() ? json(report.details) : parsed;
  }
  return j.dump(2);
}

AuditReport audit_sensitivity(const LossSpec& loss, double lambda, double R,
                              std::size_t n, int d, std::size_t trials,
                              RngStream& rng, const AuditOptions& opt) {
  require(trials >= 1, "at least one trial is required");
  require(n >= 2 && d >= 1, "instance too small");
  require(R > 0.0, "radius must be positive");
  const double mu = lambda + loss.lambda_sc;
  require(mu > 0.0, "objective must be strongly convex");
  const double tol = opt.solver.tol;

  const double sensitivity = 4.0 * (loss.rho + lambda * R) / (mu * n);
  double bound = sensitivity + 2.0 * tol;
  // Per-pair thresholds: the first inequality compares squared distances
  // against an objective gap whose evaluation error is first-order in the
  // solver tolerance; the second telescopes through the exchanged minima and
  // only carries second-order error.
  double slack_norm_bounding = 4.0 * tol * (1.0 + loss.rho + lambda * R);
  double slack_exchanging = 2.0 * tol;
  const double fault_scale = opt.fault_halve_bounds ? 0.5 : 1.0;
  bound *= fault_scale;

  double max_diff = 0.0;
  std::size_t pairs = 0;
  json violations = json::array();
  json max_pair = json::object();

  for (std::size_t t = 0; t < trials; ++t) {
    RngStream trial_rng = rng.split(t + 1);
    Dataset s = random_dataset(n, d, loss.family, trial_rng);
    std::ostringstream base_ctx;
    base_ctx << "sensitivity audit trial " << t;
    Vector v = solve_with_context(s, loss, lambda, R, opt.solver,
                                  base_ctx.str());
    const double theta_v = erm_objective(s, loss, lambda, v);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Example> reps = build_replacements(
          s[i], d, opt.replacement_grid, loss.family, trial_rng);
      for (std::size_t g = 0; g < reps.size(); ++g) {
        Dataset s2 = make_neighbor(s, i, reps[g]);
        std::ostringstream ctx;
        ctx << "sensitivity audit trial " << t << ", index " << i
            << ", replacement " << g;
        Vector u =
            solve_with_context(s2, loss, lambda, R, opt.solver, ctx.str());
        const double diff = (u - v).norm();
        if (diff > max_diff) {
          max_diff = diff;
          max_pair = {{"trial", t}, {"index", i}, {"replacement", g},
                      {"diff", diff}};
        }
        const double gap = erm_objective(s, loss, lambda, u) - theta_v;
        const double lhs_norm = 0.5 * mu * diff * diff;
        const double rhs_norm =
            fault_scale * (gap + slack_norm_bounding);
        if (lhs_norm > rhs_norm) {
          violations.push_back({{"type", "norm-bounding"},
                                {"trial", t},
                                {"index", i},
                                {"replacement", g},
                                {"lhs", lhs_norm},
                                {"rhs", rhs_norm}});
        }
        const double bracket =
            (loss.value(u, s[i]) - loss.value(u, reps[g]) +
             loss.value(v, reps[g]) - loss.value(v, s[i])) /
            static_cast<double>(n);
        const double rhs_exchanging =
            fault_scale * (bracket + slack_exchanging);
        if (gap > rhs_exchanging) {
          violations.push_back({{"type", "exchanging"},
                                {"trial", t},
                                {"index", i},
                                {"replacement", g},
                                {"lhs", gap},
                                {"rhs", rhs_exchanging}});
        }
        ++pairs;
      }
    }
  }

  AuditReport report;
  report.name = "sensitivity";
  report.observed = max_diff;
  report.bound = bound;
  report.trials = trials;
  report.pass = max_diff <= bound && violations.empty();
  json details;
  details["sensitivity"] = sensitivity;
  details["pairs"] = pairs;
  details["violations"] = truncated_violations(violations);
  details["violation_count"] = violations.size();
  details["max_pair"] = max_pair;
  report.details = details.dump();
  return report;
}

AuditReport audit_dp_ratio(MechanismId mechanism, const LossSpec& loss,
                           const MechanismConfig& cfg, std::size_t n, int d,
                           std::size_t trials, RngStream& rng,
                           const AuditOptions& opt) {
  require(trials >= 1, "at least one trial is required");
  require(n >= 2 && d >= 1, "instance too small");
  require(opt.noise_multiplier > 0.0, "noise multiplier must be positive");
  MechanismConfig local = cfg;
  local.solver = opt.solver;
  OutputMechanismSpec spec =
      resolve_output_mechanism(mechanism, loss, local, n, d);
  const double tol = opt.solver.tol;

  // Cross-check the rate the mechanism actually reports on a release.
  MechanismConfig mech_cfg = local;
  mech_cfg.noise_multiplier = opt.noise_multiplier;
  RngStream mech_rng = rng.split(0);
  Dataset probe = random_dataset(n, d, spec.loss.family, mech_rng);
  TrainedModel released =
      train_mechanism(mechanism, probe, loss, mech_cfg, mech_rng);
  const bool alpha_matches =
      std::abs(released.noise_alpha - spec.alpha) <= 1e-9 * spec.alpha;
  // The released noise was scaled by the multiplier, so its effective
  // spherical-exponential rate is alpha / multiplier.
  const double alpha_eff = released.noise_alpha / opt.noise_multiplier;

  double max_diff = 0.0;
  std::size_t pairs = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream trial_rng = rng.split(t + 1);
    Dataset s = random_dataset(n, d, spec.loss.family, trial_rng);
    std::ostringstream base_ctx;
    base_ctx << "density-ratio audit trial " << t;
    Vector v = solve_with_context(s, spec.loss, spec.lambda, spec.radius,
                                  opt.solver, base_ctx.str());
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Example> reps = build_replacements(
          s[i], d, opt.replacement_grid, spec.loss.family, trial_rng);
      for (std::size_t g = 0; g < reps.size(); ++g) {
        Dataset s2 = make_neighbor(s, i, reps[g]);
        std::ostringstream ctx;
        ctx << "density-ratio audit trial " << t << ", index " << i
            << ", replacement " << g;
        Vector u = solve_with_context(s2, spec.loss, spec.lambda, spec.radius,
                                      opt.solver, ctx.str());
        max_diff = std::max(max_diff, (u - v).norm());
        ++pairs;
      }
    }
  }

  const double worst_case = alpha_eff * (spec.sensitivity + 2.0 * tol);
  const double observed_pairs = alpha_eff * max_diff;
  AuditReport report;
  report.name = "dp-ratio";
  report.observed = std::max(worst_case, observed_pairs);
  report.bound = cfg.budget.epsilon + alpha_eff * 2.0 * tol;
  if (opt.fault_halve_bounds) report.bound *= 0.5;
  report.trials = trials;
  report.pass = alpha_matches && report.observed <= report.bound;
  json details;
  details["alpha"] = spec.alpha;
  details["alpha_effective"] = alpha_eff;
  details["alpha_reported"] = released.noise_alpha;
  details["alpha_matches"] = alpha_matches;
  details["cert_sensitivity"] = spec.sensitivity;
  details["max_pair_diff"] = max_diff;
  details["pairs"] = pairs;
  details["noise_multiplier"] = opt.noise_multiplier;
  report.details = details.dump();
  return report;
}

AuditReport audit_noise_tail(int d, double alpha, double gamma,
                             std::size_t samples, RngStream& rng,
                             const AuditOptions& opt) {
  require(d >= 1, "dimension must be positive");
  require(alpha > 0.0, "alpha must be positive");
  require(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0, 1]");
  require(samples >= 10000, "at least 1e4 samples are required");

  // Tail radius d ln(d/gamma)/alpha, with delta/eps expressed through alpha.
  const double radius = noise_norm_bound(d, gamma, 1.0, alpha);
  RngStream draw = rng.split(1);
  std::size_t exceed = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    Vector kappa = sample_spherical_exp(d, alpha, draw);
    if (kappa.norm() > radius) ++exceed;
  }
  AuditReport report;
  report.name = "noise-tail";
  report.observed =
      static_cast<double>(exceed) / static_cast<double>(samples);
  report.bound =
      gamma + 3.0 * std::sqrt(gamma * (1.0 - gamma) /
                              static_cast<double>(samples));
  if (opt.fault_halve_bounds) report.bound *= 0.5;
  report.trials = samples;
  report.pass = report.observed <= report.bound;
  json details;
  details["radius"] = radius;
  details["exceed_count"] = exceed;
  report.details = details.dump();
  return report;
}

AuditReport audit_ro_stability(MechanismId mechanism, const LossSpec& loss,
                               const MechanismConfig& cfg, std::size_t n,
                               int d, std::size_t mc_samples, RngStream& rng,
                               const AuditOptions& opt) {
  require(mc_samples >= 10000, "at least 1e4 Monte-Carlo samples required");
  require(n >= 2 && d >= 1, "instance too small");
  require(opt.noise_multiplier > 0.0, "noise multiplier must be positive");
  MechanismConfig local = cfg;
  local.solver = opt.solver;
  OutputMechanismSpec spec =
      resolve_output_mechanism(mechanism, loss, local, n, d);
  const double tol = opt.solver.tol;
  const double eps = cfg.budget.epsilon;

  // Precondition: the release must satisfy the density-ratio calibration
  // identity at its effective noise rate; otherwise it is not eps-DP and the
  // stability conclusion does not apply.
  const double alpha_eff = spec.alpha / opt.noise_multiplier;
  const bool calibration_ok =
      alpha_eff * (spec.sensitivity + 2.0 * tol) <=
      eps + alpha_eff * 2.0 * tol + 1e-12;

  RngStream data_rng = rng.split(1);
  Dataset s = random_dataset(n, d, spec.loss.family, data_rng);
  Example replaced = s[0];
  Example replacement;
  if (opt.identical_replacement) {
    replacement = replaced;
  } else {
    replacement.x = -unit_direction_of(replaced.x, d);
    replacement.y = replaced.y >= 0.0 ? -1.0 : 1.0;
  }
  Dataset s2 = make_neighbor(s, 0, replacement);
  Vector v = solve_with_context(s, spec.loss, spec.lambda, spec.radius,
                                opt.solver, "stability audit base");
  Vector u = solve_with_context(s2, spec.loss, spec.lambda, spec.radius,
                                opt.solver, "stability audit neighbor");

  std::vector<Example> tests;
  {
    Example z;
    z.x = Vector::Unit(d, 0);
    z.y = 1.0;
    tests.push_back(z);
    z.y = -1.0;
    tests.push_back(z);
    z.x = -Vector::Unit(d, 0);
    z.y = 1.0;
    tests.push_back(z);
    z.x = Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
    z.y = 1.0;
    tests.push_back(z);
    z.y = -1.0;
    tests.push_back(z);
    z.x = Vector::Zero(d);
    z.y = 1.0;
    tests.push_back(z);
  }

  const std::size_t kPoints = tests.size();
  std::vector<double> sums(kPoints, 0.0), sumsq(kPoints, 0.0);
  RngStream mc = rng.split(2);
  for (std::size_t k = 0; k < mc_samples; ++k) {
    Vector kappa = sample_spherical_exp(d, spec.alpha, mc);
    kappa *= opt.noise_multiplier;
    Vector w1 = project_ball(v + kappa, spec.radius);
    Vector w2 = project_ball(u + kappa, spec.radius);
    for (std::size_t j = 0; j < kPoints; ++j) {
      double diff =
          spec.loss.value(w1, tests[j]) - spec.loss.value(w2, tests[j]);
      sums[j] += diff;
      sumsq[j] += diff * diff;
    }
  }

  const double rate_bound = spec.loss.bound_B * (std::exp(eps) - 1.0);
  const double fault_scale = opt.fault_halve_bounds ? 0.5 : 1.0;
  double observed = 0.0;
  double bound_at_max = fault_scale * rate_bound;
  bool points_ok = true;
  json points = json::array();
  const double kd = static_cast<double>(mc_samples);
  for (std::size_t j = 0; j < kPoints; ++j) {
    double mean = sums[j] / kd;
    double var = std::max(0.0, (sumsq[j] - kd * mean * mean) / (kd - 1.0));
    double se = std::sqrt(var / kd);
    double bound_j = fault_scale * (rate_bound + 3.0 * se);
    if (std::abs(mean) > bound_j) points_ok = false;
    if (std::abs(mean) > observed) {
      observed = std::abs(mean);
      bound_at_max = bound_j;
    }
    points.push_back({{"mean", mean}, {"se", se}});
  }

  AuditReport report;
  report.name = "ro-stability";
  report.observed = observed;
  report.bound = bound_at_max;
  report.trials = mc_samples;
  report.pass = calibration_ok && points_ok;
  json details;
  details["rate_bound"] = rate_bound;
  details["calibration_ok"] = calibration_ok;
  details["base_diff"] = (u - v).norm();
  details["points"] = points;
  report.details = details.dump();
  return report;
}

AuditReport audit_smooth_training_error(const LossSpec& loss,
                                        const MechanismConfig& cfg,
                                        std::size_t n, int d, double gamma,
                                        std::size_t trials, RngStream& rng,
                                        const AuditOptions& opt) {
  require(loss.beta.has_value(), "smooth audit requires a smooth loss");
  require(trials >= 100, "at least 100 trials are required");
  require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
  const double mu = cfg.lambda + loss.lambda_sc;
  require(mu > 0.0, "objective must be strongly convex");
  validate_budget(cfg.budget);

  const double tol = opt.solver.tol;
  const double rho_eff = loss.rho + cfg.lambda * cfg.R;
  const double delta = 4.0 * rho_eff / (mu * static_cast<double>(n));
  const double alpha = cfg.budget.epsilon / (delta + 2.0 * tol);
  const double radius =
      noise_norm_bound(d, gamma, delta + 2.0 * tol, cfg.budget.epsilon);
  const double beta_obj = *loss.beta + cfg.lambda;
  double excess_bound = beta_obj * radius * radius;
  double freq_bound =
      gamma + 3.0 * std::sqrt(gamma * (1.0 - gamma) /
                              static_cast<double>(trials));
  if (opt.fault_halve_bounds) {
    excess_bound *= 0.5;
    freq_bound *= 0.5;
  }

  std::size_t exceed = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream trial_rng = rng.split(t + 1);
    Dataset s = random_dataset(n, d, loss.family, trial_rng);
    std::ostringstream ctx;
    ctx << "smooth audit trial " << t;
    Vector base = solve_with_context(s, loss, cfg.lambda, cfg.R, opt.solver,
                                     ctx.str());
    Vector kappa = sample_spherical_exp(d, alpha, trial_rng);
    kappa *= opt.noise_multiplier;
    Vector perturbed = base + kappa;
    double excess = erm_objective(s, loss, cfg.lambda, perturbed) -
                    erm_objective(s, loss, cfg.lambda, base);
    if (excess > excess_bound) ++exceed;
  }

  AuditReport report;
  report.name = "smooth-training-error";
  report.observed =
      static_cast<double>(exceed) / static_cast<double>(trials);
  report.bound = freq_bound;
  report.trials = trials;
  report.pass = report.observed <= report.bound;
  json details;
  details["excess_bound"] = excess_bound;
  details["alpha"] = alpha;
  details["radius"] = radius;
  details["exceed_count"] = exceed;
  report.details = details.dump();
  return report;
}

AuditReport audit_generalization_trend(MechanismId mechanism,
                                       LossFamily family, double epsilon,
                                       const std::vector<std::size_t>& n_grid,
                                       std::size_t trials, RngStream& rng,
                                       const AuditOptions& opt) {
  require(n_grid.size() >= 2, "need at least two dataset sizes");
  for (std::size_t k = 1; k < n_grid.size(); ++k) {
    require(n_grid[k] > n_grid[k - 1], "n grid must be strictly increasing");
  }
  require(trials >= 1, "at least one trial is required");
  require(epsilon > 0.0, "epsilon must be positive");

  const int d = 5;
  const Vector w_star =
      Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  LossSpec plain;
  switch (family) {
    case LossFamily::kSquared:
      plain = LossSpec::squared(1.0);
      break;
    case LossFamily::kHinge:
      plain = LossSpec::hinge(1.0);
      break;
    case LossFamily::kLogistic:
      plain = LossSpec::logistic(1.0);
      break;
  }

  auto draw_example = [&](RngStream& r) {
    Example z;
    Vector dir = sample_direction(d, r);
    z.x = dir * std::pow(r.uniform_pos(), 1.0 / static_cast<double>(d));
    double signal = w_star.dot(z.x) + 0.05 * r.normal();
    if (family == LossFamily::kSquared) {
      z.y = std::clamp(signal, -1.0, 1.0);
    } else {
      z.y = signal >= 0.0 ? 1.0 : -1.0;
    }
    return z;
  };

  RngStream held_rng = rng.split(1);
  const std::size_t held_n = 20000;
  std::vector<Example> held;
  held.reserve(held_n);
  for (std::size_t i = 0; i < held_n; ++i) held.push_back(draw_example(held_rng));
  auto risk = [&](const Vector& w) {
    double total = 0.0;
    for (const Example& z : held) total += plain.value(w, z);
    return total / static_cast<double>(held_n);
  };
  const double base_risk = risk(w_star);

  std::vector<double> means;
  for (std::size_t gi = 0; gi < n_grid.size(); ++gi) {
    const std::size_t n = n_grid[gi];
    double total = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      RngStream trial_rng = rng.split(1000 * (gi + 2) + t);
      std::vector<Example> rows;
      rows.reserve(n);
      for (std::size_t i = 0; i < n; ++i) rows.push_back(draw_example(trial_rng));
      Dataset s(std::move(rows));
      auto [lambda, radius] = data_independent_params(d, n, epsilon);
      MechanismConfig cfg;
      cfg.budget.epsilon = epsilon;
      cfg.lambda = std::min(lambda, 1.0);
      cfg.R = radius;
      cfg.solver = opt.solver;
      cfg.noise_multiplier = opt.noise_multiplier;
      TrainedModel model =
          train_mechanism(mechanism, s, plain, cfg, trial_rng);
      total += risk(model.w) - base_risk;
    }
    means.push_back(total / static_cast<double>(trials));
  }

  bool steps_ok = true;
  for (std::size_t k = 1; k < means.size(); ++k) {
    if (means[k] > 1.10 * means[k - 1]) steps_ok = false;
  }
  const bool endpoint_required = n_grid.back() >= 16 * n_grid.front();
  const double ratio = means.back() / means.front();
  const bool endpoint_ok = !endpoint_required || ratio <= 0.5;

  AuditReport report;
  report.name = "generalization-trend";
  report.observed = ratio;
  report.bound = endpoint_required ? 0.5 : 1.10;
  report.trials = trials;
  report.pass = steps_ok && endpoint_ok;
  json details;
  details["mean_excess"] = means;
  details["n_grid"] = n_grid;
  details["steps_ok"] = steps_ok;
  details["endpoint_required"] = endpoint_required;
  report.details = details.dump();
  return report;
}

namespace {

// A fault-dual entry: the inner audit ran with deliberately broken
// thresholds or noise, so the suite passes exactly when the inner audit
// failed (the audit has teeth).
AuditReport inverted_dual(AuditReport inner) {
  AuditReport out = inner;
  out.name = inner.name + "-fault-dual";
  out.pass = !inner.pass;
  json details;
  details["inner_pass"] = inner.pass;
  json parsed = json::parse(inner.details, nullptr, false);
  details["inner"] = parsed.is_discarded() ? json(inner.details) : parsed;
  out.details = details.dump();
  return out;
}

std::vector<AuditReport> suite_sensitivity(std::uint64_t seed) {
  std::vector<AuditReport> out;
  AuditOptions opt;
  opt.replacement_grid = 8;
  {
    RngStream r(seed, 101);
    out.push_back(
        audit_sensitivity(LossSpec::squared(1.0), 0.5, 1.0, 50, 3, 3, r, opt));
    out.back().name = "sensitivity-squared";
  }
  {
    RngStream r(seed, 102);
    out.push_back(
        audit_sensitivity(LossSpec::hinge(1.0), 0.5, 1.0, 50, 3, 3, r, opt));
    out.back().name = "sensitivity-hinge";
  }
  {
    RngStream r(seed, 103);
    out.push_back(audit_sensitivity(LossSpec::logistic(1.0), 0.5, 1.0, 50, 3,
                                    3, r, opt));
    out.back().name = "sensitivity-logistic";
  }
  {
    AuditOptions fault = opt;
    fault.fault_halve_bounds = true;
    RngStream r(seed, 104);
    AuditReport inner = audit_sensitivity(LossSpec::squared(1.0), 0.5, 1.0,
                                          50, 3, 3, r, fault);
    inner.name = "sensitivity-squared";
    out.push_back(inverted_dual(std::move(inner)));
  }
  return out;
}

std::vector<AuditReport> suite_dp_ratio(std::uint64_t seed) {
  std::vector<AuditReport> out;
  MechanismConfig cfg;
  cfg.budget.epsilon = 0.5;
  cfg.lambda = 0.5;
  cfg.R = 1.0;
  AuditOptions opt;
  opt.replacement_grid = 6;
  {
    RngStream r(seed, 201);
    out.push_back(audit_dp_ratio(MechanismId::kRlsOut, LossSpec::squared(1.0),
                                 cfg, 50, 3, 2, r, opt));
  }
  {
    AuditOptions fault = opt;
    fault.noise_multiplier = 0.5;
    RngStream r(seed, 202);
    AuditReport inner = audit_dp_ratio(
        MechanismId::kRlsOut, LossSpec::squared(1.0), cfg, 50, 3, 2, r, fault);
    inner.name = "dp-ratio-half-noise";
    out.push_back(inverted_dual(std::move(inner)));
  }
  {
    AuditOptions fault = opt;
    fault.fault_halve_bounds = true;
    RngStream r(seed, 203);
    AuditReport inner = audit_dp_ratio(
        MechanismId::kRlsOut, LossSpec::squared(1.0), cfg, 50, 3, 2, r, fault);
    inner.name = "dp-ratio-half-bound";
    out.push_back(inverted_dual(std::move(inner)));
  }
  return out;
}

std::vector<AuditReport> suite_noise_tail(std::uint64_t seed) {
  std::vector<AuditReport> out;
  {
    RngStream r(seed, 301);
    out.push_back(audit_noise_tail(14, 1.0, 0.05, 20000, r));
    out.back().name = "noise-tail-d14";
  }
  {
    RngStream r(seed, 302);
    out.push_back(audit_noise_tail(1, 1.0, 0.5, 20000, r));
    out.back().name = "noise-tail-d1";
  }
  {
    AuditOptions fault;
    fault.fault_halve_bounds = true;
    RngStream r(seed, 303);
    AuditReport inner = audit_noise_tail(1, 1.0, 0.5, 20000, r, fault);
    inner.name = "noise-tail-d1";
    out.push_back(inverted_dual(std::move(inner)));
  }
  return out;
}

std::vector<AuditReport> suite_ro_stability(std::uint64_t seed) {
  std::vector<AuditReport> out;
  MechanismConfig cfg;
  cfg.budget.epsilon = 0.5;
  cfg.lambda = 0.5;
  cfg.R = 1.0;
  {
    RngStream r(seed, 401);
    out.push_back(audit_ro_stability(MechanismId::kRlsOut,
                                     LossSpec::squared(1.0), cfg, 50, 3,
                                     10000, r));
  }
  {
    AuditOptions same;
    same.identical_replacement = true;
    RngStream r(seed, 402);
    out.push_back(audit_ro_stability(MechanismId::kRlsOut,
                                     LossSpec::squared(1.0), cfg, 50, 3,
                                     10000, r, same));
    out.back().name = "ro-stability-identical";
  }
  {
    AuditOptions fault;
    fault.noise_multiplier = 0.5;
    RngStream r(seed, 403);
    AuditReport inner = audit_ro_stability(MechanismId::kRlsOut,
                                           LossSpec::squared(1.0), cfg, 50, 3,
                                           10000, r, fault);
    inner.name = "ro-stability-half-noise";
    out.push_back(inverted_dual(std::move(inner)));
  }
  return out;
}

std::vector<AuditReport> suite_smooth(std::uint64_t seed) {
  std::vector<AuditReport> out;
  {
    LossSpec loss = LossSpec::logistic_tikhonov(2.0, 0.5);
    MechanismConfig cfg;
    cfg.budget.epsilon = 1.0;
    cfg.R = 2.0;
    RngStream r(seed, 501);
    out.push_back(
        audit_smooth_training_error(loss, cfg, 200, 5, 0.1, 200, r));
  }
  {
    LossSpec tight = LossSpec::logistic_tikhonov(0.25, 4.0);
    MechanismConfig cfg;
    cfg.budget.epsilon = 1.0;
    cfg.R = 0.25;
    AuditOptions fault;
    fault.fault_halve_bounds = true;
    RngStream r(seed, 502);
    AuditReport inner =
        audit_smooth_training_error(tight, cfg, 50, 1, 0.5, 1000, r, fault);
    inner.name = "smooth-training-error-tight";
    out.push_back(inverted_dual(std::move(inner)));
  }
  return out;
}

std::vector<AuditReport> suite_generalization(std::uint64_t seed) {
  std::vector<AuditReport> out;
  RngStream r(seed, 601);
  out.push_back(audit_generalization_trend(MechanismId::kOutputPerturbConvex,
                                           LossFamily::kSquared, 0.5,
                                           {250, 1000, 4000}, 8, r));
  return out;
}

std::vector<AuditReport> suite_quick(std::uint64_t seed) {
  std::vector<AuditReport> out;
  AuditOptions opt;
  opt.replacement_grid = 6;
  {
    RngStream r(seed, 701);
    out.push_back(
        audit_sensitivity(LossSpec::squared(1.0), 0.5, 1.0, 30, 3, 1, r, opt));
  }
  {
    AuditOptions fault = opt;
    fault.fault_halve_bounds = true;
    RngStream r(seed, 702);
    out.push_back(inverted_dual(audit_sensitivity(LossSpec::squared(1.0), 0.5,
                                                  1.0, 30, 3, 1, r, fault)));
  }
  {
    RngStream r(seed, 703);
    out.push_back(audit_noise_tail(1, 1.0, 0.5, 10000, r));
  }
  {
    AuditOptions fault;
    fault.fault_halve_bounds = true;
    RngStream r(seed, 704);
    out.push_back(inverted_dual(audit_noise_tail(1, 1.0, 0.5, 10000, r,
                                                 fault)));
  }
  return out;
}

void append(std::vector<AuditReport>& into, std::vector<AuditReport> more) {
  for (AuditReport& r : more) into.push_back(std::move(r));
}

}  // namespace

std::vector<AuditReport> run_audit_suite(const std::string& suite,
                                         std::uint64_t master_seed) {
  if (suite == "sensitivity") return suite_sensitivity(master_seed);
  if (suite == "dp-ratio") return suite_dp_ratio(master_seed);
  if (suite == "noise-tail") return suite_noise_tail(master_seed);
  if (suite == "ro-stability") return suite_ro_stability(master_seed);
  if (suite == "smooth") return suite_smooth(master_seed);
  if (suite == "generalization") return suite_generalization(master_seed);
  if (suite == "quick") return suite_quick(master_seed);
  if (suite == "all") {
    std::vector<AuditReport> out;
    append(out, suite_sensitivity(master_seed));
    append(out, suite_dp_ratio(master_seed));
    append(out, suite_noise_tail(master_seed));
    append(out, suite_ro_stability(master_seed));
    append(out, suite_smooth(master_seed));
    append(out, suite_generalization(master_seed));
    return out;
  }
  throw std::invalid_argument("unknown audit suite: " + suite);
}

}  // namespace dpconvex
