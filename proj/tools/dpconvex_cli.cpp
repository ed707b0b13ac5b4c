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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpconvex/attacks.hpp"
#include "dpconvex/audit.hpp"
#include "dpconvex/core.hpp"
#include "dpconvex/harness.hpp"
#include "dpconvex/losses.hpp"
#include "dpconvex/mechanisms.hpp"
#include "dpconvex/rng.hpp"
#include "json.hpp"

namespace {

using dpconvex::Dataset;
using dpconvex::ExperimentResult;
using dpconvex::LossSpec;
using dpconvex::MechanismConfig;
using dpconvex::MechanismId;
using dpconvex::MiTarget;
using dpconvex::RngStream;
using dpconvex::SyntheticSpec;
using dpconvex::TrainedModel;
using dpconvex::Vector;
using nlohmann::json;

// Seed precedence: explicit --seed flag, then DPCONVEX_SEED, then 42.
std::uint64_t default_seed() {
  const char* env = std::getenv("DPCONVEX_SEED");
  if (env == nullptr || *env == '\0') return 42;
  char* end = nullptr;
  unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw std::runtime_error("DPCONVEX_SEED must be an unsigned integer");
  }
  return static_cast<std::uint64_t>(value);
}

LossSpec make_loss(const std::string& family, double radius, double tikhonov) {
  if (family == "squared") {
    return tikhonov > 0.0 ? LossSpec::squared_tikhonov(radius, tikhonov)
                          : LossSpec::squared(radius);
  }
  if (family == "logistic") {
    return tikhonov > 0.0 ? LossSpec::logistic_tikhonov(radius, tikhonov)
                          : LossSpec::logistic(radius);
  }
  if (family == "hinge") {
    if (tikhonov > 0.0) {
      throw std::runtime_error(
          "hinge loss has no Tikhonov composite; use --lambda instead");
    }
    return LossSpec::hinge(radius);
  }
  throw std::runtime_error("unknown loss family: " + family);
}

SyntheticSpec spec_from_json(const json& j) {
  SyntheticSpec spec = dpconvex::default_synthetic_spec();
  if (j.contains("d_continuous")) spec.d_continuous = j.at("d_continuous");
  if (j.contains("snp_levels")) spec.snp_levels = j.at("snp_levels");
  if (j.contains("prior")) {
    spec.prior = j.at("prior").get<std::vector<double>>();
  }
  if (j.contains("noise_sigma")) spec.noise_sigma = j.at("noise_sigma");
  if (j.contains("n_train")) spec.n_train = j.at("n_train");
  if (j.contains("n_valid")) spec.n_valid = j.at("n_valid");
  if (j.contains("w_star")) {
    auto values = j.at("w_star").get<std::vector<double>>();
    spec.w_star = Eigen::Map<const Vector>(values.data(),
                                           static_cast<Eigen::Index>(
                                               values.size()));
  }
  return spec;
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json j;
  in >> j;
  return j;
}

int run_train(const std::string& mechanism, double epsilon, double lambda,
              double radius, const std::string& loss_family, double tikhonov,
              const std::string& data_path, std::uint64_t seed,
              const std::string& out_path, bool conservative) {
  MechanismId id = dpconvex::mechanism_from_name(mechanism);
  Dataset raw = dpconvex::read_csv_file(data_path);
  Dataset data = dpconvex::scale_dataset(raw);
  MechanismConfig cfg;
  cfg.budget.epsilon = epsilon;
  cfg.lambda = lambda;
  cfg.R = radius;
  cfg.conservative_sensitivity = conservative;
  if (id == MechanismId::kTuned) {
    cfg.grid_lambda = dpconvex::default_grid_lambda();
    cfg.grid_R = dpconvex::default_grid_R_large();
  }
  LossSpec loss = make_loss(loss_family, radius, tikhonov);
  RngStream rng(seed, 1);
  TrainedModel model = dpconvex::train_mechanism(id, data, loss, cfg, rng);
  dpconvex::write_model_file(model, out_path);
  std::cout << "wrote " << out_path << " (mechanism=" << mechanism
            << ", epsilon=" << dpconvex::format_double(epsilon) << ")\n";
  return 0;
}

int run_tune(double epsilon, const std::vector<double>& grid_lambda,
             const std::vector<double>& grid_radius, bool conservative,
             const std::string& data_path, std::uint64_t seed,
             const std::string& out_path) {
  Dataset data = dpconvex::scale_dataset(dpconvex::read_csv_file(data_path));
  MechanismConfig cfg;
  cfg.budget.epsilon = epsilon;
  cfg.grid_lambda =
      grid_lambda.empty() ? dpconvex::default_grid_lambda() : grid_lambda;
  cfg.grid_R =
      grid_radius.empty() ? dpconvex::default_grid_R_large() : grid_radius;
  cfg.conservative_sensitivity = conservative;
  RngStream rng(seed, 1);
  TrainedModel model = dpconvex::tune_private(data, cfg, rng);
  dpconvex::write_model_file(model, out_path);
  std::cout << "wrote " << out_path << " (mechanism=tuned, lambda="
            << dpconvex::format_double(model.lambda)
            << ", R=" << dpconvex::format_double(model.radius_R) << ")\n";
  return 0;
}

int run_attack(const std::string& model_path, const std::string& data_path,
               int levels, double sigma, std::uint64_t seed,
               const std::string& out_path) {
  TrainedModel model = dpconvex::read_model_file(model_path);
  Dataset data = dpconvex::scale_dataset(dpconvex::read_csv_file(data_path));
  if (levels < 2 || data.dim() <= levels) {
    throw std::runtime_error(
        "--levels must be >= 2 and smaller than the feature dimension");
  }
  MiTarget target;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < levels; ++k) {
    target.target_indices.push_back(data.dim() - levels + k);
    Vector candidate = Vector::Zero(levels);
    candidate[k] = inv_sqrt2;
    target.candidates.push_back(candidate);
  }
  target.prior.assign(static_cast<std::size_t>(levels),
                      1.0 / static_cast<double>(levels));
  target.prior = dpconvex::empirical_prior(data, target);
  target.residual_sigma =
      sigma > 0.0 ? sigma : dpconvex::estimate_residual_sigma(data);

  dpconvex::AttackResult result;
  result.epsilon = model.epsilon;
  result.mechanism = dpconvex::mechanism_name(model.mechanism);
  result.mi_accuracy = dpconvex::mi_accuracy(model, data, target);
  result.n_validation = data.n();
  result.seed = seed;
  std::string text = dpconvex::attack_result_to_json(result);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << text << '\n';
  }
  std::cout << text << '\n';
  return 0;
}

int run_audit(const std::string& suite, std::uint64_t seed) {
  std::vector<dpconvex::AuditReport> reports =
      dpconvex::run_audit_suite(suite, seed);
  json all = json::array();
  std::size_t passed = 0;
  for (const auto& report : reports) {
    all.push_back(json::parse(dpconvex::audit_report_to_json(report)));
    if (report.pass) ++passed;
  }
  std::cout << all.dump(2) << '\n';
  std::cerr << "suite '" << suite << "': " << passed << "/" << reports.size()
            << " checks passed\n";
  return passed == reports.size() ? 0 : 1;
}

int run_experiment_tradeoff(const json& config, std::uint64_t seed,
                            const std::string& out_path) {
  std::vector<MechanismId> mechanisms;
  for (const auto& name : config.at("mechanisms")) {
    mechanisms.push_back(
        dpconvex::mechanism_from_name(name.get<std::string>()));
  }
  std::vector<double> epsilons =
      config.at("epsilons").get<std::vector<double>>();
  std::size_t trials = config.value("trials", std::size_t{25});
  SyntheticSpec spec = spec_from_json(config.value("spec", json::object()));
  if (config.contains("seed")) seed = config.at("seed").get<std::uint64_t>();
  ExperimentResult result =
      dpconvex::run_tradeoff(mechanisms, epsilons, spec, trials, seed);
  dpconvex::write_results_csv_file(result, out_path);
  std::cout << "wrote " << out_path << " (" << result.rows.size()
            << " rows)\n";
  return 0;
}

int run_experiment_size_sweep(const json& config, std::uint64_t seed,
                              const std::string& out_path) {
  MechanismId mechanism =
      dpconvex::mechanism_from_name(config.at("mechanism").get<std::string>());
  double epsilon = config.at("epsilon").get<double>();
  std::vector<double> rates = config.at("rates").get<std::vector<double>>();
  std::size_t trials = config.value("trials", std::size_t{25});
  SyntheticSpec spec = spec_from_json(config.value("spec", json::object()));
  if (config.contains("seed")) seed = config.at("seed").get<std::uint64_t>();

  MechanismConfig proto = dpconvex::harness_mechanism_config(
      mechanism, spec.dim(), spec.n_train, epsilon);
  if (config.contains("config")) {
    const json& c = config.at("config");
    if (c.contains("lambda")) proto.lambda = c.at("lambda");
    if (c.contains("R")) proto.R = c.at("R");
    if (c.contains("grid_lambda")) {
      proto.grid_lambda = c.at("grid_lambda").get<std::vector<double>>();
    }
    if (c.contains("grid_R")) {
      proto.grid_R = c.at("grid_R").get<std::vector<double>>();
    }
    if (c.contains("conservative_sensitivity")) {
      proto.conservative_sensitivity = c.at("conservative_sensitivity");
    }
  }
  ExperimentResult result = dpconvex::run_size_sweep(
      mechanism, proto, epsilon, spec, rates, trials, seed);
  dpconvex::write_results_csv_file(result, out_path);
  std::cout << "wrote " << out_path << " (" << result.rows.size()
            << " rows)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dpconvex: differentially private convex learning"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  try {
    seed = default_seed();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  // train
  auto* train = app.add_subcommand("train", "Train a private model");
  std::string mechanism = "rls-out";
  double epsilon = 1.0;
  double lambda = 0.1;
  double radius = 1.0;
  std::string loss_family = "squared";
  double tikhonov = 0.0;
  std::string data_path;
  std::string out_path = "model.json";
  bool conservative = false;
  train->add_option("--mechanism", mechanism,
                    "out-sc|out-convex|rls-out|obj-perturb|functional|tuned|"
                    "data-indep|non-private");
  train->add_option("--epsilon", epsilon, "Privacy budget");
  train->add_option("--lambda", lambda, "Regularization strength");
  train->add_option("--radius", radius, "Hypothesis ball radius R");
  train->add_option("--loss", loss_family, "squared|hinge|logistic");
  train->add_option("--tikhonov", tikhonov,
                    "Tikhonov weight for strongly convex composites");
  train->add_option("--data", data_path, "Training CSV")->required();
  train->add_option("--seed", seed, "Master seed");
  train->add_option("--out", out_path, "Model JSON output path");
  train->add_flag("--conservative", conservative,
                  "Conservative tuner sensitivity");

  // tune
  auto* tune = app.add_subcommand("tune", "Privately tuned output perturbation");
  double tune_epsilon = 1.0;
  std::vector<double> grid_lambda;
  std::vector<double> grid_radius;
  std::string tune_data;
  std::string tune_out = "model.json";
  bool tune_conservative = false;
  tune->add_option("--epsilon", tune_epsilon, "Privacy budget");
  tune->add_option("--grid-lambda", grid_lambda, "Lambda candidates");
  tune->add_option("--grid-R", grid_radius, "Radius candidates");
  tune->add_option("--data", tune_data, "Training CSV")->required();
  tune->add_option("--seed", seed, "Master seed");
  tune->add_option("--out", tune_out, "Model JSON output path");
  tune->add_flag("--conservative", tune_conservative,
                 "Conservative selection sensitivity");

  // attack
  auto* attack = app.add_subcommand("attack", "Model-inversion evaluation");
  std::string model_path;
  std::string attack_data;
  int levels = 3;
  double sigma = 0.0;
  std::string attack_out;
  attack->add_option("--model", model_path, "Model JSON")->required();
  attack->add_option("--data", attack_data, "Attacked CSV")->required();
  attack->add_option("--levels", levels,
                     "One-hot level count in the trailing columns");
  attack->add_option("--sigma", sigma,
                     "Residual sigma (default: estimated from data)");
  attack->add_option("--seed", seed, "Recorded seed");
  attack->add_option("--out", attack_out, "Also write the JSON report here");

  // audit
  auto* audit = app.add_subcommand("audit", "Run an audit suite");
  std::string suite;
  audit
      ->add_option("--suite", suite,
                   "sensitivity|dp-ratio|noise-tail|ro-stability|smooth|"
                   "generalization|quick|all")
      ->required();
  audit->add_option("--seed", seed, "Master seed");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run an experiment");
  experiment->require_subcommand(1);
  std::string config_path;
  std::string results_path = "results.csv";
  auto* tradeoff =
      experiment->add_subcommand("tradeoff", "Privacy-utility epsilon sweep");
  tradeoff->add_option("--config", config_path, "JSON config")->required();
  tradeoff->add_option("--out", results_path, "Results CSV path");
  tradeoff->add_option("--seed", seed, "Master seed");
  auto* sweep =
      experiment->add_subcommand("size-sweep", "Training-set size sweep");
  sweep->add_option("--config", config_path, "JSON config")->required();
  sweep->add_option("--out", results_path, "Results CSV path");
  sweep->add_option("--seed", seed, "Master seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) {
      return run_train(mechanism, epsilon, lambda, radius, loss_family,
                       tikhonov, data_path, seed, out_path, conservative);
    }
    if (*tune) {
      return run_tune(tune_epsilon, grid_lambda, grid_radius,
                      tune_conservative, tune_data, seed, tune_out);
    }
    if (*attack) {
      return run_attack(model_path, attack_data, levels, sigma, seed,
                        attack_out);
    }
    if (*audit) {
      return run_audit(suite, seed);
    }
    if (*tradeoff) {
      return run_experiment_tradeoff(load_config(config_path), seed,
                                     results_path);
    }
    if (*sweep) {
      return run_experiment_size_sweep(load_config(config_path), seed,
                                       results_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
