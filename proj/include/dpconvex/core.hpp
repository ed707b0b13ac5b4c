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

#ifndef DPCONVEX_CORE_HPP_
#define DPCONVEX_CORE_HPP_

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpconvex {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// One training/validation record: feature vector x and response y.
// After scaling, ||x|| <= 1 and |y| <= 1; every Lipschitz/sensitivity
// constant in this library is certified only under that geometry.
struct Example {
  Vector x;
  double y = 0.0;
};

// Affine factors applied at ingestion so predictions can be mapped back to
// the raw units (raw_y = y / y_factor, raw_x = x / x_factor).
struct ScalingRecord {
  double x_factor = 1.0;
  double y_factor = 1.0;
};

// Positive, finite privacy budget epsilon.
struct PrivacyBudget {
  double epsilon = 1.0;
};
void validate_budget(const PrivacyBudget& budget);

// Immutable ordered collection of same-dimension examples.
// Neighbor construction copies; nothing mutates a dataset in place.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<Example> examples, ScalingRecord scaling = {});

  std::size_t n() const { return examples_.size(); }
  Eigen::Index dim() const { return d_; }
  const Example& operator[](std::size_t i) const { return examples_[i]; }
  const std::vector<Example>& examples() const { return examples_; }
  const ScalingRecord& scaling() const { return scaling_; }

  // Dense views used by the closed-form ridge path and the baselines.
  Matrix feature_matrix() const;
  Vector response_vector() const;

 private:
  std::vector<Example> examples_;
  Eigen::Index d_ = 0;
  ScalingRecord scaling_;
};

// Replace-one neighbor S^(i,z'): same size, same dimension, only row i
// replaced. Throws std::out_of_range / std::invalid_argument.
Dataset make_neighbor(const Dataset& s, std::size_t i, const Example& z_prime);

// Scales features by 1/max_i||x_i|| and responses by 1/max_i|y_i| whenever
// the respective max exceeds 1; records both factors. Idempotent.
Dataset scale_dataset(const Dataset& raw);

// Shortest decimal form that parses back to exactly the same double; used
// by every serializer so output is deterministic and round-trips.
std::string format_double(double value);

// CSV: header row, one feature column per dimension, last column = response.
// Rows containing non-numeric cells are rejected with their 1-based row
// number in the exception message.
Dataset read_csv(std::istream& in);
Dataset read_csv_file(const std::string& path);
void write_csv(const Dataset& data, std::ostream& out);
void write_csv_file(const Dataset& data, const std::string& path);

}  // namespace dpconvex

#endif  // DPCONVEX_CORE_HPP_
