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

#include "dpconvex/core.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace dpconvex {

void validate_budget(const PrivacyBudget& budget) {
  if (!(budget.epsilon > 0.0) || !std::isfinite(budget.epsilon)) {
    throw std::invalid_argument("privacy budget must be positive and finite");
  }
}

Dataset::Dataset(std::vector<Example> examples, ScalingRecord scaling)
    : examples_(std::move(examples)), scaling_(scaling) {
  if (!examples_.empty()) {
    d_ = examples_[0].x.size();
    for (const Example& z : examples_) {
      if (z.x.size() != d_) {
        throw std::invalid_argument(
            "all examples in a dataset must share one dimension");
      }
    }
  }
}

Matrix Dataset::feature_matrix() const {
  Matrix x(static_cast<Eigen::Index>(n()), d_);
  for (std::size_t i = 0; i < n(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = examples_[i].x.transpose();
  }
  return x;
}

Vector Dataset::response_vector() const {
  Vector y(static_cast<Eigen::Index>(n()));
  for (std::size_t i = 0; i < n(); ++i) {
    y(static_cast<Eigen::Index>(i)) = examples_[i].y;
  }
  return y;
}

Dataset make_neighbor(const Dataset& s, std::size_t i,
                      const Example& z_prime) {
  if (i >= s.n()) throw std::out_of_range("neighbor index out of range");
  if (z_prime.x.size() != s.dim()) {
    throw std::invalid_argument("replacement example has wrong dimension");
  }
  std::vector<Example> rows = s.examples();
  rows[i] = z_prime;
  return Dataset(std::move(rows), s.scaling());
}

Dataset scale_dataset(const Dataset& raw) {
  if (raw.n() == 0) throw std::invalid_argument("cannot scale empty dataset");
  double max_norm = 0.0, max_y = 0.0;
  for (std::size_t i = 0; i < raw.n(); ++i) {
    const Example& z = raw[i];
    if (!z.x.allFinite() || !std::isfinite(z.y)) {
      throw std::invalid_argument("dataset contains a non-finite value");
    }
    max_norm = std::max(max_norm, z.x.norm());
    max_y = std::max(max_y, std::abs(z.y));
  }
  const double fx = max_norm > 1.0 ? 1.0 / max_norm : 1.0;
  const double fy = max_y > 1.0 ? 1.0 / max_y : 1.0;
  std::vector<Example> rows = raw.examples();
  if (fx != 1.0 || fy != 1.0) {
    for (Example& z : rows) {
      z.x *= fx;
      z.y *= fy;
    }
  }
  // Compose with any factors applied earlier so the record always maps the
  // original units to the current ones (and rescaling stays the identity).
  ScalingRecord rec = raw.scaling();
  rec.x_factor *= fx;
  rec.y_factor *= fy;
  return Dataset(std::move(rows), rec);
}

std::string format_double(double value) {
  // Shortest decimal form that parses back to the identical double.
  char buf[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

double parse_cell(const std::string& cell, std::size_t row) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  // The whole cell must be one finite number.
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0') || !std::isfinite(v)) {
    throw std::invalid_argument("non-numeric cell in csv row " +
                                std::to_string(row));
  }
  return v;
}

std::vector<std::string> split_csv_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

Dataset read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("csv input is empty");
  }
  const std::size_t columns = split_csv_line(line).size();
  if (columns < 2) {
    throw std::invalid_argument(
        "csv needs at least one feature column and one response column");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(columns) - 1;
  std::vector<Example> rows;
  std::size_t row_number = 1;  // header row
  while (std::getline(in, line)) {
    ++row_number;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != columns) {
      throw std::invalid_argument("csv row " + std::to_string(row_number) +
                                  " has " + std::to_string(cells.size()) +
                                  " cells, expected " +
                                  std::to_string(columns));
    }
    Example z;
    z.x = Vector(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      z.x(j) = parse_cell(cells[static_cast<std::size_t>(j)], row_number);
    }
    z.y = parse_cell(cells.back(), row_number);
    rows.push_back(std::move(z));
  }
  return Dataset(std::move(rows));
}

Dataset read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open csv file: " + path);
  return read_csv(in);
}

void write_csv(const Dataset& data, std::ostream& out) {
  for (Eigen::Index j = 0; j < data.dim(); ++j) out << "x" << j << ",";
  out << "y\n";
  for (std::size_t i = 0; i < data.n(); ++i) {
    const Example& z = data[i];
    for (Eigen::Index j = 0; j < data.dim(); ++j) {
      out << format_double(z.x(j)) << ",";
    }
    out << format_double(z.y) << "\n";
  }
}

void write_csv_file(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open csv file: " + path);
  write_csv(data, out);
}

}  // namespace dpconvex
