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

#include "dpconvex/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace dpconvex {
namespace {

// SplitMix64 finalizer; mixes (seed, stream_id) into one engine seed.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_id) {
  return splitmix64(splitmix64(seed) ^ splitmix64(~stream_id));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(mix_seed(seed, stream_id)) {}

RngStream RngStream::split(std::uint64_t child_id) const {
  // Children depend only on (seed, stream_id, child_id), never on how much
  // of this stream has been consumed.
  return RngStream(seed_,
                   splitmix64(stream_id_ * 0x9E3779B97F4A7C15ULL + child_id));
}

double RngStream::uniform() {
  // 53 random mantissa bits, in [0, 1).
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
  // In (0, 1]; safe under log().
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::normal() {
  if (have_spare_normal_) {
    have_spare_normal_ = false;
    return spare_normal_;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  have_spare_normal_ = true;
  return u * f;
}

double RngStream::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw std::invalid_argument("gamma requires shape > 0 and scale > 0");
  }
  if (shape < 1.0) {
    // Boost: Gamma(a) = Gamma(a+1) * U^(1/a).
    double g = gamma(shape + 1.0, scale);
    return g * std::pow(uniform_pos(), 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze method for shape >= 1.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = uniform_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v * scale;
    }
  }
}

double RngStream::laplace(double b) {
  if (!(b > 0.0)) throw std::invalid_argument("laplace requires b > 0");
  // Inverse CDF with p strictly inside (0, 1).
  double p = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  return p < 0.5 ? b * std::log(2.0 * p) : -b * std::log(2.0 * (1.0 - p));
}

std::uint64_t RngStream::uniform_int(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_int requires bound > 0");
  // Reject the low residue band so x % bound is exactly uniform.
  const std::uint64_t min = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    std::uint64_t x = engine_();
    if (x >= min) return x % bound;
  }
}

}  // namespace dpconvex
