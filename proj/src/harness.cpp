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

#include "dpconvex/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dpconvex/losses.hpp"
#include "dpconvex/noise.hpp"
#include "json.hpp"

namespace dpconvex {

namespace {

using nlohmann::json;

// Stream-id layout: per-trial data streams, per-trial permutation streams,
// and per-row mechanism streams never collide.
constexpr std::uint64_t kDataStreamBase = 1000000;
constexpr std::uint64_t kPermStreamBase = 2000000;

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

void validate_spec(const SyntheticSpec& spec) {
  require(spec.d_continuous >= 1, "need at least one continuous feature");
  require(spec.snp_levels >= 2, "need at least two candidate levels");
  require(spec.prior.size() == static_cast<std::size_t>(spec.snp_levels),
          "prior length must match the level count");
  double total = 0.0;
  for (double p : spec.prior) {
    require(std::isfinite(p) && p >= 0.0, "prior entries must be >= 0");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-9, "prior must sum to one");
  require(std::isfinite(spec.noise_sigma) && spec.noise_sigma >= 0.0,
          "noise sigma must be >= 0");
  require(spec.n_train >= 1 && spec.n_valid >= 1,
          "train and validation sizes must be positive");
  if (spec.w_star.size() != 0) {
    require(spec.w_star.size() == spec.dim(),
            "w_star dimension must match the feature dimension");
    require(spec.w_star.norm() <= 1.0 + 1e-9, "w_star must have norm <= 1");
  }
}

Example draw_example(const SyntheticSpec& spec, const Vector& w_star,
                     RngStream& rng) {
  const int dc = spec.d_continuous;
  const int levels = spec.snp_levels;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Example z;
  z.x = Vector::Zero(dc + levels);
  // Continuous block uniform in a ball of radius 1/sqrt(2); together with
  // the 1/sqrt(2)-scaled one-hot block the full vector has norm <= 1.
  Vector dir = sample_direction(dc, rng);
  double radius =
      inv_sqrt2 * std::pow(rng.uniform_pos(), 1.0 / static_cast<double>(dc));
  z.x.head(dc) = dir * radius;
  double u = rng.uniform();
  int level = levels - 1;
  double cum = 0.0;
  for (int k = 0; k < levels; ++k) {
    cum += spec.prior[static_cast<std::size_t>(k)];
    if (u < cum) {
      level = k;
      break;
    }
  }
  z.x[dc + level] = inv_sqrt2;
  double noise = rng.normal();  // drawn unconditionally: stable stream layout
  z.y = std::clamp(w_star.dot(z.x) + spec.noise_sigma * noise, -1.0, 1.0);
  return z;
}

std::string row_to_csv(const ExperimentRow& row) {
  std::ostringstream line;
  line << row.mechanism << ',' << format_double(row.epsilon) << ',' << row.n
       << ',' << row.trial << ',' << format_double(row.mse) << ','
       << format_double(row.mi_accuracy) << ',' << row.seed;
  return line.str();
}

constexpr const char* kCsvHeader = "mechanism,epsilon,n,trial,mse,mi_accuracy,seed";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double_field(const std::string& field) {
  char* end = nullptr;
  double value = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0') {
    throw std::runtime_error("results CSV: bad numeric field '" + field + "'");
  }
  return value;
}

std::uint64_t parse_uint_field(const std::string& field) {
  try {
    std::size_t pos = 0;
    unsigned long long value = std::stoull(field, &pos);
    if (pos != field.size()) throw std::invalid_argument(field);
    return static_cast<std::uint64_t>(value);
  } catch (const std::exception&) {
    throw std::runtime_error("results CSV: bad integer field '" + field + "'");
  }
}

// The loss handed to train_mechanism; several mechanisms derive their own
// internal squared loss and ignore it, but the generic entry points need a
// spec whose geometry matches the config.
LossSpec experiment_loss(MechanismId id, const MechanismConfig& cfg) {
  if (id == MechanismId::kOutputPerturbStronglyConvex) {
    double t = std::max(cfg.lambda, 1e-3);
    return LossSpec::squared_tikhonov(1.0 / t, t);
  }
  return LossSpec::squared(cfg.R > 0.0 ? cfg.R : 1.0);
}

ExperimentRow evaluate_row(MechanismId mechanism, const MechanismConfig& cfg,
                           double epsilon, const Dataset& train,
                           const Dataset& valid, const MiTarget& target,
                           std::size_t trial, std::uint64_t master_seed,
                           std::uint64_t row_stream) {
  ExperimentRow row;
  row.mechanism = mechanism_name(mechanism);
  row.epsilon = epsilon;
  row.n = train.n();
  row.trial = trial;
  row.seed = row_stream;
  try {
    RngStream mech_rng(master_seed, row_stream);
    TrainedModel model;
    if (mechanism == MechanismId::kOracle) {
      model = oracle_search(train, valid, epsilon, mech_rng);
    } else {
      model = train_mechanism(mechanism, train,
                              experiment_loss(mechanism, cfg), cfg, mech_rng);
    }
    row.mse = eval_mse(model, valid);
    row.mi_accuracy = mi_accuracy(model, train, target);
  } catch (const std::exception&) {
    row.mse = std::numeric_limits<double>::quiet_NaN();
    row.mi_accuracy = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

}  // namespace

SyntheticSpec default_synthetic_spec() { return SyntheticSpec{}; }

Vector default_w_star(const SyntheticSpec& spec) {
  Vector w = Vector::Zero(spec.dim());
  for (int j = 0; j < spec.d_continuous; ++j) w[j] = 0.5;
  // Distinct per-level weights so the levels are separable: 0.65, 0, -0.65,
  // then continuing down in equal steps for more levels.
  for (int k = 0; k < spec.snp_levels; ++k) {
    w[spec.d_continuous + k] = 0.65 - 0.65 * static_cast<double>(k);
  }
  return w / w.norm();
}

GeneratedData generate(const SyntheticSpec& spec, RngStream& rng) {
  validate_spec(spec);
  const Vector w_star =
      spec.w_star.size() != 0 ? spec.w_star : default_w_star(spec);

  std::vector<Example> train_rows;
  train_rows.reserve(spec.n_train);
  for (std::size_t i = 0; i < spec.n_train; ++i) {
    train_rows.push_back(draw_example(spec, w_star, rng));
  }
  std::vector<Example> valid_rows;
  valid_rows.reserve(spec.n_valid);
  for (std::size_t i = 0; i < spec.n_valid; ++i) {
    valid_rows.push_back(draw_example(spec, w_star, rng));
  }

  GeneratedData out;
  out.train = Dataset(std::move(train_rows));
  out.valid = Dataset(std::move(valid_rows));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < spec.snp_levels; ++k) {
    out.target.target_indices.push_back(spec.d_continuous + k);
    Vector candidate = Vector::Zero(spec.snp_levels);
    candidate[k] = inv_sqrt2;
    out.target.candidates.push_back(candidate);
  }
  out.target.prior = spec.prior;
  out.target.residual_sigma = std::max(spec.noise_sigma, 1e-6);
  return out;
}

double eval_mse(const TrainedModel& model, const Dataset& valid) {
  require(valid.n() >= 1, "validation set is empty");
  require(model.w.size() == valid.dim(),
          "model dimension does not match the validation set");
  double total = 0.0;
  for (std::size_t i = 0; i < valid.n(); ++i) {
    double r = model.w.dot(valid[i].x) - valid[i].y;
    total += r * r;
  }
  return total / static_cast<double>(valid.n());
}

MechanismConfig harness_mechanism_config(MechanismId id, Eigen::Index d,
                                         std::size_t n, double eps) {
  MechanismConfig cfg;
  cfg.budget.epsilon = eps;
  switch (id) {
    case MechanismId::kRlsOut:
    case MechanismId::kDataIndependent:
    case MechanismId::kOutputPerturbConvex:
    case MechanismId::kObjectivePerturb:
    case MechanismId::kOutputPerturbStronglyConvex: {
      auto [lambda, radius] = data_independent_params(d, n, eps);
      cfg.lambda = std::min(lambda, 1.0);
      cfg.R = radius;
      break;
    }
    case MechanismId::kFunctional:
      cfg.lambda = 0.0;
      cfg.R = 100.0;  // effectively unclamped comparator
      break;
    case MechanismId::kTuned:
      cfg.grid_R = default_grid_R_large();
      cfg.grid_lambda = default_grid_lambda();
      cfg.R = 1.0;
      break;
    case MechanismId::kNonPrivate:
    case MechanismId::kOracle:
      cfg.lambda = 1e-6;
      cfg.R = 2.0;
      break;
  }
  return cfg;
}

ExperimentResult run_tradeoff(const std::vector<MechanismId>& mechanisms,
                              const std::vector<double>& epsilon_grid,
                              const SyntheticSpec& spec, std::size_t trials,
                              std::uint64_t master_seed) {
  require(!mechanisms.empty(), "mechanism list is empty");
  require(!epsilon_grid.empty(), "epsilon grid is empty");
  for (double eps : epsilon_grid) {
    validate_budget(PrivacyBudget{eps});
  }
  require(trials >= 1, "at least one trial is required");
  validate_spec(spec);

  // The split is fixed per trial before any mechanism runs; every mechanism
  // and epsilon sees the same data at the same trial index.
  std::vector<GeneratedData> data;
  data.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream data_rng(master_seed, kDataStreamBase + t);
    data.push_back(generate(spec, data_rng));
  }

  ExperimentResult out;
  std::uint64_t row_stream = 1;
  for (MechanismId mechanism : mechanisms) {
    for (double eps : epsilon_grid) {
      MechanismConfig cfg = harness_mechanism_config(
          mechanism, spec.dim(), spec.n_train, eps);
      for (std::size_t t = 0; t < trials; ++t) {
        const GeneratedData& g = data[t];
        out.rows.push_back(evaluate_row(mechanism, cfg, eps, g.train, g.valid,
                                        g.target, t, master_seed,
                                        row_stream));
        ++row_stream;
      }
    }
  }
  return out;
}

ExperimentResult run_size_sweep(MechanismId mechanism,
                                const MechanismConfig& proto, double epsilon,
                                const SyntheticSpec& spec,
                                const std::vector<double>& sample_rates,
                                std::size_t trials,
                                std::uint64_t master_seed) {
  require(!sample_rates.empty(), "sample-rate list is empty");
  validate_budget(PrivacyBudget{epsilon});
  require(trials >= 1, "at least one trial is required");
  validate_spec(spec);
  std::vector<std::size_t> subset_sizes;
  for (double rate : sample_rates) {
    require(std::isfinite(rate) && rate > 0.0 && rate <= 1.0,
            "sample rates must lie in (0, 1]");
    auto size = static_cast<std::size_t>(
        std::floor(rate * static_cast<double>(spec.n_train)));
    require(size >= static_cast<std::size_t>(spec.dim()),
            "sample rate yields fewer examples than the feature dimension");
    subset_sizes.push_back(size);
  }

  std::vector<GeneratedData> data;
  data.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream data_rng(master_seed, kDataStreamBase + t);
    data.push_back(generate(spec, data_rng));
  }

  MechanismConfig cfg = proto;
  cfg.budget.epsilon = epsilon;

  ExperimentResult out;
  std::uint64_t row_stream = 1;
  for (std::size_t r = 0; r < sample_rates.size(); ++r) {
    for (std::size_t t = 0; t < trials; ++t) {
      const GeneratedData& g = data[t];
      // Permute once per trial (the permutation stream depends only on the
      // trial), so subsets at increasing rates are nested chunks.
      const std::size_t pool = g.train.n();
      std::vector<std::size_t> perm(pool);
      for (std::size_t i = 0; i < pool; ++i) perm[i] = i;
      RngStream perm_rng(master_seed, kPermStreamBase + t);
      for (std::size_t i = pool - 1; i > 0; --i) {
        std::size_t j = perm_rng.uniform_int(i + 1);
        std::swap(perm[i], perm[j]);
      }
      std::vector<Example> subset_rows;
      subset_rows.reserve(subset_sizes[r]);
      for (std::size_t i = 0; i < subset_sizes[r]; ++i) {
        subset_rows.push_back(g.train[perm[i]]);
      }
      Dataset subset(std::move(subset_rows));
      out.rows.push_back(evaluate_row(mechanism, cfg, epsilon, subset,
                                      g.valid, g.target, t, master_seed,
                                      row_stream));
      ++row_stream;
    }
  }
  return out;
}

TrainedModel oracle_search(const Dataset& train, const Dataset& valid,
                           double epsilon, RngStream& rng) {
  require(train.n() >= 2, "training set too small");
  require(valid.n() >= 1, "validation set is empty");
  validate_budget(PrivacyBudget{epsilon});

  // Data-independent candidate first, on a fixed split id so callers can
  // reproduce exactly this release; the search then dominates it.
  MechanismConfig di_cfg;
  di_cfg.budget.epsilon = epsilon;
  RngStream di_rng = rng.split(0);
  TrainedModel best = train_mechanism(MechanismId::kDataIndependent, train,
                                      LossSpec::squared(1.0), di_cfg, di_rng);
  double best_mse = eval_mse(best, valid);
  double best_lambda = best.lambda;
  double best_radius = best.radius_R;

  std::uint64_t idx = 1;
  for (double radius : {0.25, 0.5, 1.0, 2.0}) {
    for (int k = 0; k < 50; ++k) {
      double lambda =
          0.001 + (0.5 - 0.001) * static_cast<double>(k) / 49.0;
      MechanismConfig cfg;
      cfg.budget.epsilon = epsilon;
      cfg.lambda = lambda;
      cfg.R = radius;
      RngStream cand_rng = rng.split(idx);
      ++idx;
      TrainedModel candidate = train_rls_out(train, cfg, cand_rng);
      double mse = eval_mse(candidate, valid);
      if (mse < best_mse) {
        best = candidate;
        best_mse = mse;
        best_lambda = lambda;
        best_radius = radius;
      }
    }
  }

  best.mechanism = MechanismId::kOracle;
  json snapshot = json::parse(best.config_snapshot, nullptr, false);
  if (snapshot.is_discarded()) snapshot = json::object();
  snapshot["oracle_validation_mse"] = best_mse;
  snapshot["oracle_lambda"] = best_lambda;
  snapshot["oracle_R"] = best_radius;
  best.config_snapshot = snapshot.dump();
  return best;
}

void write_results_csv(const ExperimentResult& result, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const ExperimentRow& row : result.rows) out << row_to_csv(row) << '\n';
}

void write_results_csv_file(const ExperimentResult& result,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_results_csv(result, out);
  out.flush();
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

ExperimentResult read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("results CSV: missing or malformed header");
  }
  ExperimentResult out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 7) {
      throw std::runtime_error("results CSV: expected 7 fields, got " +
                               std::to_string(fields.size()));
    }
    ExperimentRow row;
    row.mechanism = fields[0];
    row.epsilon = parse_double_field(fields[1]);
    row.n = static_cast<std::size_t>(parse_uint_field(fields[2]));
    row.trial = static_cast<std::size_t>(parse_uint_field(fields[3]));
    row.mse = parse_double_field(fields[4]);
    row.mi_accuracy = parse_double_field(fields[5]);
    row.seed = parse_uint_field(fields[6]);
    out.rows.push_back(std::move(row));
  }
  return out;
}

ExperimentResult read_results_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_results_csv(in);
}

}  // namespace dpconvex
