// Copyright 2026 The brg Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BRG_RNG_HPP_
#define BRG_RNG_HPP_

#include <array>
#include <cstdint>
#include <span>

namespace brg {

// SplitMix64 finalizer; used to derive independent substream seeds.
std::uint64_t mix64(std::uint64_t x);

// Deterministic xoshiro256++ generator with hand-rolled samplers so that
// results are identical across platforms and standard libraries.
//
// Substreams are keyed as a pure function of (master_seed, stream_id);
// drawing from one substream never affects another, so streams can be
// consumed in any order (or in parallel) with identical results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static Rng substream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double next_double();

  // Standard normal via Box-Muller (pairs cached).
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape > 0.
  double gamma(double shape);

  // Fills `out` with one draw from Dirichlet(alpha, ..., alpha).
  void dirichlet(double alpha, std::span<double> out);

  // Index sampled from an unnormalized nonnegative weight vector.
  int categorical(std::span<const double> weights);

 private:
  std::array<std::uint64_t, 4> state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace brg

#endif  // BRG_RNG_HPP_
