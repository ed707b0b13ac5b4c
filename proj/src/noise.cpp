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

#include "dpconvex/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace dpconvex {

Vector sample_direction(int d, RngStream& rng) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  Vector g(d);
  for (;;) {
    for (int j = 0; j < d; ++j) g(j) = rng.normal();
    double norm = g.norm();
    if (norm > 1e-300) return g / norm;
  }
}

Vector sample_spherical_exp(int d, double alpha, RngStream& rng) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  // Radius first, then direction: the density factorizes as
  // Gamma(d, 1/alpha) over the norm times the uniform sphere measure.
  const double r = rng.gamma(static_cast<double>(d), 1.0 / alpha);
  return r * sample_direction(d, rng);
}

double noise_norm_bound(int d, double gamma, double delta, double eps) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw std::invalid_argument("gamma must lie in (0, 1]");
  }
  if (!(delta > 0.0) || !(eps > 0.0)) {
    throw std::invalid_argument("delta and eps must be positive");
  }
  return d * std::log(d / gamma) * delta / eps;
}

double sample_laplace(double b, RngStream& rng) {
  if (!(b > 0.0)) throw std::invalid_argument("laplace scale must be > 0");
  return rng.laplace(b);
}

}  // namespace dpconvex
