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

#ifndef BRG_ROLLOUT_HPP_
#define BRG_ROLLOUT_HPP_

#include <cstdint>

#include "brg/game.hpp"

namespace brg {

// Monte-Carlo estimate of a type pair's discounted utilities, obtained by
// simulating the game directly (sample actions from the softmax policies,
// then the next state from the transition kernel). Deliberately shares no
// code with the closed-form evaluation path so it can serve as an
// independent oracle.
struct RolloutEstimate {
  double mean1 = 0.0;
  double mean2 = 0.0;
  double stderr1 = 0.0;
  double stderr2 = 0.0;
  int horizon = 0;
  std::int64_t num_rollouts = 0;
};

// Truncation horizon H with discount^H * max|R| / (1 - discount) < tail_tol.
int rollout_horizon(const Game& g, double tail_tol = 1e-6);

RolloutEstimate rollout_pair(const Game& g, const PolicyParams& theta, int type1, int type2,
                             std::int64_t num_rollouts, std::uint64_t seed,
                             double tail_tol = 1e-6);

}  // namespace brg

#endif  // BRG_ROLLOUT_HPP_
