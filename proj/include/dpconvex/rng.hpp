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

#ifndef DPCONVEX_RNG_HPP_
#define DPCONVEX_RNG_HPP_

#include <cstdint>
#include <random>

namespace dpconvex {

// Deterministic stream of random variates. std::mt19937_64 output is fixed
// by the C++ standard, and every distribution transform below is hand-rolled
// (std::*_distribution is implementation-defined), so a (seed, stream_id)
// pair yields bit-identical sequences on any conforming platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  // Independent child stream; deterministic in (seed, stream_id, child_id).
  RngStream split(std::uint64_t child_id) const;

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform();
  // Uniform on (0, 1]; convenient for logs.
  double uniform_pos();
  // Standard normal via Marsaglia polar method.
  double normal();
  // Gamma(shape, scale) via Marsaglia-Tsang squeeze (with the shape<1
  // boost); requires shape > 0, scale > 0.
  double gamma(double shape, double scale);
  // Laplace(0, b) via inverse CDF.
  double laplace(double b);
  // Uniform integer in [0, bound) by rejection (no modulo bias).
  std::uint64_t uniform_int(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::mt19937_64 engine_;
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace dpconvex

#endif  // DPCONVEX_RNG_HPP_
