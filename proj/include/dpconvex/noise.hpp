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

#ifndef DPCONVEX_NOISE_HPP_
#define DPCONVEX_NOISE_HPP_

#include "dpconvex/core.hpp"
#include "dpconvex/rng.hpp"

namespace dpconvex {

// Draws kappa in R^d with density proportional to exp(-alpha * ||kappa||).
// Decomposes as ||kappa|| ~ Gamma(shape=d, scale=1/alpha) times an
// independent uniform direction. Requires d >= 1, alpha > 0.
Vector sample_spherical_exp(int d, double alpha, RngStream& rng);

// Uniform direction on the unit sphere in R^d.
Vector sample_direction(int d, RngStream& rng);

// Norm tail radius: with probability >= 1 - gamma, a spherical-exponential
// draw at alpha = eps / delta satisfies ||kappa|| <= the returned value.
// Requires d >= 1, 0 < gamma < 1.
double noise_norm_bound(int d, double gamma, double delta, double eps);

// Scalar Laplace(0, b) draw (shared with the functional baseline).
double sample_laplace(double b, RngStream& rng);

}  // namespace dpconvex

#endif  // DPCONVEX_NOISE_HPP_
