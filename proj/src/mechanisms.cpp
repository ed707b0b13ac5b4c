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

#include "dpconvex/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "json.hpp"

namespace dpconvex {

namespace {

using nlohmann::json;

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

// Per-example Hessian operator-norm bound used by objective perturbation when
// the caller does not supply one.
double default_hessian_bound(const LossSpec& loss) {
  switch (loss.family) {
    case LossFamily::kSquared:
      return 2.0 + loss.tikhonov;
    case LossFamily::kLogistic:
      return 0.25 + loss.tikhonov;
    case LossFamily::kHinge:
      throw std::invalid_argument(
          "objective perturbation needs a twice-differentiable loss; "
          "hinge is not supported");
  }
  throw std::logic_error("unknown loss family");
}

double widened_alpha(double eps_p, double sensitivity, double solver_tol) {
  require(eps_p > 0.0 && std::isfinite(eps_p), "epsilon must be positive");
  require(solver_tol >= 0.0, "solver tolerance must be non-negative");
  return eps_p / (sensitivity + 2.0 * solver_tol);
}

json snapshot_base(const MechanismConfig& cfg) {
  json j;
  j["noise_multiplier"] = cfg.noise_multiplier;
  j["zero_noise"] = cfg.zero_noise;
  j["solver_tol"] = cfg.solver.tol;
  return j;
}

// Shared tail of the output-perturbation mechanisms: record the base point,
// draw spherical-exponential noise at `alpha`, and assemble the model.
TrainedModel finish_output_perturb(MechanismId id, const Dataset& s,
                                   const Vector& base, double alpha,
                                   double lambda, double radius,
                                   const MechanismConfig& cfg, RngStream& rng,
                                   json snapshot) {
  TrainedModel m;
  m.mechanism = id;
  m.epsilon = cfg.budget.epsilon;
  m.lambda = lambda;
  m.radius_R = radius;
  m.rng_seed = rng.seed();
  m.pre_noise_w = base;
  m.has_pre_noise = true;
  m.noise_alpha = alpha;
  m.scaling = s.scaling();
  if (cfg.zero_noise) {
    m.w = base;
  } else {
    Vector kappa = sample_spherical_exp(base.size(), alpha, rng);
    m.w = base + cfg.noise_multiplier * kappa;
  }
  snapshot["alpha"] = alpha;
  m.config_snapshot = snapshot.dump();
  return m;
}

std::vector<double> to_std(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Vector to_eigen(const std::vector<double>& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = v[i];
  }
  return out;
}

}  // namespace

std::string mechanism_name(MechanismId id) {
  switch (id) {
    case MechanismId::kOutputPerturbStronglyConvex:
      return "out-sc";
    case MechanismId::kOutputPerturbConvex:
      return "out-convex";
    case MechanismId::kRlsOut:
      return "rls-out";
    case MechanismId::kObjectivePerturb:
      return "obj-perturb";
    case MechanismId::kFunctional:
      return "functional";
    case MechanismId::kTuned:
      return "tuned";
    case MechanismId::kDataIndependent:
      return "data-indep";
    case MechanismId::kOracle:
      return "oracle";
    case MechanismId::kNonPrivate:
      return "non-private";
  }
  throw std::logic_error("unknown mechanism id");
}

MechanismId mechanism_from_name(const std::string& name) {
  static const std::vector<MechanismId> all = {
      MechanismId::kOutputPerturbStronglyConvex,
      MechanismId::kOutputPerturbConvex,
      MechanismId::kRlsOut,
      MechanismId::kObjectivePerturb,
      MechanismId::kFunctional,
      MechanismId::kTuned,
      MechanismId::kDataIndependent,
      MechanismId::kOracle,
      MechanismId::kNonPrivate,
  };
  for (MechanismId id : all) {
    if (mechanism_name(id) == name) return id;
  }
  throw std::invalid_argument("unknown mechanism name: " + name);
}

// --- Sensitivities and rates -------------------------------------------------

double output_sc_sensitivity(const LossSpec& loss, std::size_t n) {
  require(n > 0, "dataset must be non-empty");
  require(loss.lambda_sc > 0.0,
          "strongly convex output perturbation needs lambda_sc > 0");
  return 4.0 * loss.rho / (loss.lambda_sc * static_cast<double>(n));
}

double output_convex_sensitivity(const LossSpec& loss, double lambda, double R,
                                 std::size_t n) {
  require(n > 0, "dataset must be non-empty");
  require(lambda > 0.0, "lambda must be positive");
  require(R > 0.0, "radius must be positive");
  return 4.0 * (loss.rho + lambda * R) / (lambda * static_cast<double>(n));
}

double rls_out_sensitivity(double lambda, double R, std::size_t n) {
  require(n > 0, "dataset must be non-empty");
  require(lambda > 0.0 && lambda <= 1.0, "rls-out requires lambda in (0, 1]");
  require(R > 0.0, "radius must be positive");
  return (12.0 * R + 8.0) / (lambda * static_cast<double>(n));
}

double output_sc_alpha(const LossSpec& loss, double eps_p, std::size_t n,
                       double solver_tol) {
  return widened_alpha(eps_p, output_sc_sensitivity(loss, n), solver_tol);
}

double output_convex_alpha(const LossSpec& loss, double lambda, double R,
                           double eps_p, std::size_t n, double solver_tol) {
  return widened_alpha(eps_p, output_convex_sensitivity(loss, lambda, R, n),
                       solver_tol);
}

double rls_out_alpha(double lambda, double R, double eps_p, std::size_t n,
                     double solver_tol) {
  return widened_alpha(eps_p, rls_out_sensitivity(lambda, R, n), solver_tol);
}

// --- Training entry points ---------------------------------------------------

TrainedModel train_output_perturb_sc(const Dataset& s, const LossSpec& loss,
                                     const MechanismConfig& cfg,
                                     RngStream& rng) {
  validate_budget(cfg.budget);
  double alpha =
      output_sc_alpha(loss, cfg.budget.epsilon, s.n(), cfg.solver.tol);
  // The regularization lives inside the loss (lambda_sc > 0), so the base
  // point is the plain ERM over the loss's own ball.
  Vector base = solve_erm(s, loss, 0.0, loss.radius, cfg.solver);
  json snap = snapshot_base(cfg);
  snap["loss"] = loss_family_name(loss.family);
  snap["sensitivity"] = output_sc_sensitivity(loss, s.n());
  return finish_output_perturb(MechanismId::kOutputPerturbStronglyConvex, s,
                               base, alpha, loss.lambda_sc, loss.radius, cfg,
                               rng, std::move(snap));
}

TrainedModel train_output_perturb_convex(const Dataset& s,
                                         const LossSpec& loss,
                                         const MechanismConfig& cfg,
                                         RngStream& rng) {
  validate_budget(cfg.budget);
  double alpha = output_convex_alpha(loss, cfg.lambda, cfg.R,
                                     cfg.budget.epsilon, s.n(),
                                     cfg.solver.tol);
  Vector base = solve_erm(s, loss, cfg.lambda, cfg.R, cfg.solver);
  json snap = snapshot_base(cfg);
  snap["loss"] = loss_family_name(loss.family);
  snap["sensitivity"] =
      output_convex_sensitivity(loss, cfg.lambda, cfg.R, s.n());
  return finish_output_perturb(MechanismId::kOutputPerturbConvex, s, base,
                               alpha, cfg.lambda, cfg.R, cfg, rng,
                               std::move(snap));
}

TrainedModel train_rls_out(const Dataset& s, const MechanismConfig& cfg,
                           RngStream& rng) {
  validate_budget(cfg.budget);
  double alpha = rls_out_alpha(cfg.lambda, cfg.R, cfg.budget.epsilon, s.n(),
                               cfg.solver.tol);
  Vector base =
      solve_erm(s, LossSpec::squared(cfg.R), cfg.lambda, cfg.R, cfg.solver);
  json snap = snapshot_base(cfg);
  snap["loss"] = loss_family_name(LossFamily::kSquared);
  snap["sensitivity"] = rls_out_sensitivity(cfg.lambda, cfg.R, s.n());
  return finish_output_perturb(MechanismId::kRlsOut, s, base, alpha,
                               cfg.lambda, cfg.R, cfg, rng, std::move(snap));
}

ObjPerturbCalib objective_perturb_calibration(double eps_p, std::size_t n,
                                              double lambda, double c,
                                              bool chaudhuri_beta) {
  require(eps_p > 0.0, "epsilon must be positive");
  require(n > 0, "dataset must be non-empty");
  require(lambda > 0.0, "lambda must be positive");
  require(c > 0.0, "hessian bound c must be positive");
  const double nl = static_cast<double>(n) * lambda;
  const double log_term = std::log1p(2.0 * c / nl + (c * c) / (nl * nl));
  ObjPerturbCalib out;
  const double remainder = eps_p - log_term;
  if (remainder > 0.0) {
    out.eps_prime = remainder;
    out.delta = 0.0;
  } else {
    out.delta =
        c / (static_cast<double>(n) * (std::exp(eps_p / 4.0) - 1.0)) - lambda;
    out.eps_prime = eps_p / 2.0;
  }
  out.noise_beta = chaudhuri_beta ? out.eps_prime / 2.0 : eps_p / 2.0;
  return out;
}

TrainedModel train_objective_perturb(const Dataset& s, const LossSpec& loss,
                                     const MechanismConfig& cfg,
                                     RngStream& rng) {
  validate_budget(cfg.budget);
  require(cfg.lambda > 0.0, "objective perturbation requires lambda > 0");
  require(cfg.R > 0.0, "radius must be positive");
  const double c = cfg.c > 0.0 ? cfg.c : default_hessian_bound(loss);
  ObjPerturbCalib calib = objective_perturb_calibration(
      cfg.budget.epsilon, s.n(), cfg.lambda, c, cfg.chaudhuri_beta);

  TrainedModel m;
  m.mechanism = MechanismId::kObjectivePerturb;
  m.epsilon = cfg.budget.epsilon;
  m.lambda = cfg.lambda;
  m.radius_R = cfg.R;
  m.rng_seed = rng.seed();
  m.has_pre_noise = false;
  m.noise_alpha = calib.noise_beta;
  m.scaling = s.scaling();
  if (cfg.zero_noise) {
    m.w = solve_erm(s, loss, cfg.lambda, cfg.R, cfg.solver);
  } else {
    Vector nu = sample_spherical_exp(s.dim(), calib.noise_beta, rng);
    nu *= cfg.noise_multiplier;
    m.w = solve_erm(s, loss, cfg.lambda, cfg.R, cfg.solver, nu);
  }
  json snap = snapshot_base(cfg);
  snap["loss"] = loss_family_name(loss.family);
  snap["c"] = c;
  snap["eps_prime"] = calib.eps_prime;
  snap["delta"] = calib.delta;
  snap["beta"] = calib.noise_beta;
  m.config_snapshot = snap.dump();
  return m;
}

double functional_sensitivity(Eigen::Index d, std::size_t n) {
  require(d > 0, "dimension must be positive");
  require(n > 0, "dataset must be non-empty");
  const double dp1 = static_cast<double>(d) + 1.0;
  return 2.0 * dp1 * dp1 / static_cast<double>(n);
}

TrainedModel train_functional(const Dataset& s, const MechanismConfig& cfg,
                              RngStream& rng) {
  validate_budget(cfg.budget);
  require(cfg.R > 0.0, "radius must be positive");
  const Eigen::Index d = s.dim();
  const double n = static_cast<double>(s.n());
  Matrix X = s.feature_matrix();
  Vector y = s.response_vector();
  Matrix A = (X.transpose() * X) / n;
  Vector b = 2.0 * (X.transpose() * y) / n;

  const double scale =
      functional_sensitivity(d, s.n()) / cfg.budget.epsilon;
  if (!cfg.zero_noise) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        A(i, j) += cfg.noise_multiplier * sample_laplace(scale, rng);
      }
    }
    for (Eigen::Index i = 0; i < d; ++i) {
      b(i) += cfg.noise_multiplier * sample_laplace(scale, rng);
    }
  }
  // The noisy A is no longer symmetric; symmetrize, then floor the spectrum
  // so the induced quadratic stays convex and bounded below.
  Matrix sym = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  require(es.info() == Eigen::Success, "eigendecomposition failed");
  Vector evals = es.eigenvalues().cwiseMax(1e-6);
  Vector bt = es.eigenvectors().transpose() * b;

  // Minimize w^T diag(evals) w - bt^T w over the R-ball (in the eigenbasis):
  // unconstrained solution bt_k / (2 evals_k); otherwise bisect the shift mu
  // with ||w(mu)|| = R, since the norm is strictly decreasing in mu.
  auto coords_at = [&](double mu) {
    return (bt.array() / (2.0 * (evals.array() + mu))).matrix().eval();
  };
  Vector coords = coords_at(0.0);
  if (coords.norm() > cfg.R) {
    double lo = 0.0;
    double hi = bt.norm() / (2.0 * cfg.R);
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (coords_at(mid).norm() > cfg.R) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    coords = coords_at(hi);
  }

  TrainedModel m;
  m.mechanism = MechanismId::kFunctional;
  m.epsilon = cfg.budget.epsilon;
  m.lambda = 0.0;
  m.radius_R = cfg.R;
  m.rng_seed = rng.seed();
  m.has_pre_noise = false;
  m.noise_alpha = 0.0;
  m.scaling = s.scaling();
  m.w = es.eigenvectors() * coords;
  json snap = snapshot_base(cfg);
  snap["laplace_scale"] = scale;
  snap["sensitivity"] = functional_sensitivity(d, s.n());
  m.config_snapshot = snap.dump();
  return m;
}

TrainedModel train_non_private(const Dataset& s, const LossSpec& loss,
                               const MechanismConfig& cfg) {
  TrainedModel m;
  m.mechanism = MechanismId::kNonPrivate;
  m.epsilon = cfg.budget.epsilon;
  m.lambda = cfg.lambda;
  m.radius_R = cfg.R;
  m.has_pre_noise = false;
  m.scaling = s.scaling();
  m.w = solve_erm(s, loss, cfg.lambda, cfg.R, cfg.solver);
  json snap = snapshot_base(cfg);
  snap["loss"] = loss_family_name(loss.family);
  m.config_snapshot = snap.dump();
  return m;
}

std::pair<double, double> data_independent_params(Eigen::Index d,
                                                  std::size_t n, double eps) {
  require(d > 0, "dimension must be positive");
  require(n > 0, "dataset must be non-empty");
  require(eps > 0.0, "epsilon must be positive");
  double lambda =
      std::sqrt(static_cast<double>(d) / (static_cast<double>(n) * eps));
  return {lambda, 1.0};
}

TrainedModel train_data_independent(const Dataset& s,
                                    const MechanismConfig& cfg,
                                    RngStream& rng) {
  validate_budget(cfg.budget);
  auto [lambda, radius] =
      data_independent_params(s.dim(), s.n(), cfg.budget.epsilon);
  MechanismConfig local = cfg;
  // rls-out only certifies lambda <= 1; the rule can exceed that when n eps
  // is smaller than d, in which case the strongest admissible value is used.
  local.lambda = std::min(lambda, 1.0);
  local.R = radius;
  TrainedModel m = train_rls_out(s, local, rng);
  m.mechanism = MechanismId::kDataIndependent;
  json snap = json::parse(m.config_snapshot);
  snap["rule_lambda"] = lambda;
  snap["lambda_clamped"] = lambda > 1.0;
  m.config_snapshot = snap.dump();
  return m;
}

std::vector<double> default_grid_lambda() {
  std::vector<double> out;
  double v = 0.002;
  for (int k = 0; k < 8; ++k) {
    out.push_back(v);
    v *= 2.0;
  }
  return out;
}

std::vector<double> default_grid_R_small() { return {0.25, 0.5, 1.0}; }

std::vector<double> default_grid_R_large() { return {0.5, 1.0, 2.0}; }

std::vector<double> tuner_selection_probs(const std::vector<double>& losses,
                                          double eps_p, double R_max,
                                          bool conservative_sensitivity) {
  require(!losses.empty(), "at least one candidate is required");
  require(eps_p > 0.0, "epsilon must be positive");
  require(R_max > 0.0, "radius must be positive");
  const double span = conservative_sensitivity
                          ? (R_max + 1.0) * (R_max + 1.0)
                          : R_max * R_max;
  std::vector<double> exponents(losses.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < losses.size(); ++i) {
    exponents[i] = -losses[i] * eps_p / (2.0 * span);
    best = std::max(best, exponents[i]);
  }
  std::vector<double> probs(losses.size());
  double total = 0.0;
  for (std::size_t i = 0; i < losses.size(); ++i) {
    probs[i] = std::exp(exponents[i] - best);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

TrainedModel tune_private(const Dataset& s, const MechanismConfig& cfg,
                          RngStream& rng) {
  validate_budget(cfg.budget);
  const std::vector<double> grid_R =
      cfg.grid_R.empty() ? default_grid_R_large() : cfg.grid_R;
  const std::vector<double> grid_lambda =
      cfg.grid_lambda.empty() ? default_grid_lambda() : cfg.grid_lambda;
  for (double r : grid_R) require(r > 0.0, "radius grid must be positive");
  for (double l : grid_lambda) {
    require(l > 0.0 && l <= 1.0, "lambda grid must lie in (0, 1]");
  }
  const std::size_t m_cand = grid_R.size() * grid_lambda.size();
  require(s.n() >= m_cand + 1,
          "tuner needs at least one example per candidate chunk plus one "
          "validation example");

  // Seeded shuffle, then contiguous chunks in candidate order; the final
  // chunk plus any leftover rows form the validation split.
  std::vector<std::size_t> order(s.n());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = s.n() - 1; i >= 1; --i) {
    std::size_t j = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::uint64_t>(i + 1)));
    std::swap(order[i], order[j]);
  }
  const std::size_t q = s.n() / (m_cand + 1);

  struct Candidate {
    double radius;
    double lambda;
    TrainedModel model;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(m_cand);
  std::size_t chunk = 0;
  for (double r : grid_R) {
    for (double l : grid_lambda) {
      std::vector<Example> rows;
      rows.reserve(q);
      for (std::size_t t = chunk * q; t < (chunk + 1) * q; ++t) {
        rows.push_back(s[order[t]]);
      }
      Dataset piece(std::move(rows), s.scaling());
      MechanismConfig local = cfg;
      local.grid_R.clear();
      local.grid_lambda.clear();
      local.R = r;
      local.lambda = l;
      candidates.push_back({r, l, train_rls_out(piece, local, rng)});
      ++chunk;
    }
  }

  std::vector<double> validation_losses(m_cand, 0.0);
  const std::size_t v_begin = m_cand * q;
  const std::size_t v_count = s.n() - v_begin;
  for (std::size_t k = 0; k < m_cand; ++k) {
    double total = 0.0;
    for (std::size_t t = v_begin; t < s.n(); ++t) {
      const Example& z = s[order[t]];
      double r = candidates[k].model.w.dot(z.x) - z.y;
      total += r * r;
    }
    validation_losses[k] = total / static_cast<double>(v_count);
  }

  const double r_max = *std::max_element(grid_R.begin(), grid_R.end());
  std::vector<double> probs =
      tuner_selection_probs(validation_losses, cfg.budget.epsilon, r_max,
                            cfg.conservative_sensitivity);
  double u = rng.uniform();
  std::size_t pick = probs.size() - 1;
  double cum = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    cum += probs[k];
    if (u < cum) {
      pick = k;
      break;
    }
  }

  TrainedModel out = candidates[pick].model;
  out.mechanism = MechanismId::kTuned;
  json snap = json::parse(out.config_snapshot);
  snap["grid_R"] = grid_R;
  snap["grid_lambda"] = grid_lambda;
  snap["chunk_size"] = q;
  snap["validation_size"] = v_count;
  snap["chosen_index"] = pick;
  snap["validation_losses"] = validation_losses;
  out.config_snapshot = snap.dump();
  return out;
}

TrainedModel train_mechanism(MechanismId id, const Dataset& s,
                             const LossSpec& loss, const MechanismConfig& cfg,
                             RngStream& rng) {
  switch (id) {
    case MechanismId::kOutputPerturbStronglyConvex:
      return train_output_perturb_sc(s, loss, cfg, rng);
    case MechanismId::kOutputPerturbConvex:
      return train_output_perturb_convex(s, loss, cfg, rng);
    case MechanismId::kRlsOut:
      return train_rls_out(s, cfg, rng);
    case MechanismId::kObjectivePerturb:
      return train_objective_perturb(s, loss, cfg, rng);
    case MechanismId::kFunctional:
      return train_functional(s, cfg, rng);
    case MechanismId::kTuned:
      return tune_private(s, cfg, rng);
    case MechanismId::kDataIndependent:
      return train_data_independent(s, cfg, rng);
    case MechanismId::kNonPrivate:
      return train_non_private(s, loss, cfg);
    case MechanismId::kOracle:
      throw std::invalid_argument(
          "oracle selection needs a validation set; use the harness");
  }
  throw std::logic_error("unknown mechanism id");
}

// --- Serialization -----------------------------------------------------------

std::string model_to_json(const TrainedModel& model) {
  json j;
  j["mechanism"] = mechanism_name(model.mechanism);
  j["epsilon"] = model.epsilon;
  j["lambda"] = model.lambda;
  j["R"] = model.radius_R;
  j["seed"] = model.rng_seed;
  j["weights"] = to_std(model.w);
  if (model.has_pre_noise) {
    j["pre_noise_weights"] = to_std(model.pre_noise_w);
  }
  j["noise_alpha"] = model.noise_alpha;
  j["scaling"] = {{"x_factor", model.scaling.x_factor},
                  {"y_factor", model.scaling.y_factor}};
  if (!model.config_snapshot.empty()) {
    j["config"] = json::parse(model.config_snapshot);
  }
  return j.dump(2);
}

TrainedModel model_from_json(const std::string& text) {
  json j = json::parse(text);
  TrainedModel m;
  m.mechanism = mechanism_from_name(j.at("mechanism").get<std::string>());
  m.epsilon = j.at("epsilon").get<double>();
  m.lambda = j.at("lambda").get<double>();
  m.radius_R = j.at("R").get<double>();
  m.rng_seed = j.at("seed").get<std::uint64_t>();
  m.w = to_eigen(j.at("weights").get<std::vector<double>>());
  if (j.contains("pre_noise_weights")) {
    m.pre_noise_w = to_eigen(j["pre_noise_weights"].get<std::vector<double>>());
    m.has_pre_noise = true;
  }
  if (j.contains("noise_alpha")) m.noise_alpha = j["noise_alpha"].get<double>();
  if (j.contains("scaling")) {
    m.scaling.x_factor = j["scaling"].at("x_factor").get<double>();
    m.scaling.y_factor = j["scaling"].at("y_factor").get<double>();
  }
  if (j.contains("config")) m.config_snapshot = j["config"].dump();
  return m;
}

void write_model_file(const TrainedModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << model_to_json(model) << "\n";
  if (!out) throw std::runtime_error("failed writing: " + path);
}

TrainedModel read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return model_from_json(text);
}

}  // namespace dpconvex
