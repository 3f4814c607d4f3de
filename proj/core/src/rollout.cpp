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

#include "brg/rollout.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "brg/rng.hpp"

namespace brg {

namespace {

// Cumulative distribution rows for O(bins) inverse-CDF sampling.
std::vector<double> cumulative(std::span<const double> probs) {
  std::vector<double> cum(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cum[i] = acc;
  }
  return cum;
}

inline int sample(const std::vector<double>& cum, double u) {
  const int n = static_cast<int>(cum.size());
  for (int i = 0; i + 1 < n; ++i) {
    if (u < cum[i]) {
      return i;
    }
  }
  return n - 1;
}

}  // namespace

int rollout_horizon(const Game& g, double tail_tol) {
  double max_reward = 0.0;
  for (double r : g.rewards) {
    max_reward = std::max(max_reward, std::abs(r));
  }
  if (g.discount <= 0.0 || max_reward == 0.0) {
    return 1;
  }
  const double bound = max_reward / (1.0 - g.discount);
  const double steps = std::log(tail_tol / bound) / std::log(g.discount);
  return std::max(1, static_cast<int>(std::ceil(steps)));
}

RolloutEstimate rollout_pair(const Game& g, const PolicyParams& theta, int type1, int type2,
                             std::int64_t num_rollouts, std::uint64_t seed, double tail_tol) {
  const int s_count = g.num_states;
  const int a1_count = g.num_actions[0];
  const int a2_count = g.num_actions[1];

  std::vector<std::vector<double>> pi1_cum(s_count);
  std::vector<std::vector<double>> pi2_cum(s_count);
  for (int s = 0; s < s_count; ++s) {
    pi1_cum[s] = cumulative(softmax_policy(theta, 0, type1, s));
    pi2_cum[s] = cumulative(softmax_policy(theta, 1, type2, s));
  }
  std::vector<std::vector<double>> transition_cum(
      static_cast<std::size_t>(s_count) * a1_count * a2_count);
  for (int s = 0; s < s_count; ++s) {
    for (int a1 = 0; a1 < a1_count; ++a1) {
      for (int a2 = 0; a2 < a2_count; ++a2) {
        transition_cum[(static_cast<std::size_t>(s) * a1_count + a1) * a2_count + a2] =
            cumulative(g.transition_row(s, a1, a2));
      }
    }
  }
  const std::vector<double> init_cum = cumulative(g.initial_state_dist);

  RolloutEstimate est;
  est.horizon = rollout_horizon(g, tail_tol);
  est.num_rollouts = num_rollouts;

  Rng rng(seed);
  double sum1 = 0.0;
  double sum2 = 0.0;
  double sum_sq1 = 0.0;
  double sum_sq2 = 0.0;
  for (std::int64_t n = 0; n < num_rollouts; ++n) {
    int s = sample(init_cum, rng.next_double());
    double ret1 = 0.0;
    double ret2 = 0.0;
    double discount_t = 1.0;
    for (int t = 0; t < est.horizon; ++t) {
      const int a1 = sample(pi1_cum[s], rng.next_double());
      const int a2 = sample(pi2_cum[s], rng.next_double());
      ret1 += discount_t * g.reward(0, type1, s, a1, a2);
      ret2 += discount_t * g.reward(1, type2, s, a1, a2);
      discount_t *= g.discount;
      s = sample(transition_cum[(static_cast<std::size_t>(s) * a1_count + a1) * a2_count + a2],
                 rng.next_double());
    }
    sum1 += ret1;
    sum2 += ret2;
    sum_sq1 += ret1 * ret1;
    sum_sq2 += ret2 * ret2;
  }

  const double n = static_cast<double>(num_rollouts);
  est.mean1 = sum1 / n;
  est.mean2 = sum2 / n;
  const double var1 = std::max(0.0, sum_sq1 / n - est.mean1 * est.mean1);
  const double var2 = std::max(0.0, sum_sq2 / n - est.mean2 * est.mean2);
  est.stderr1 = std::sqrt(var1 / n);
  est.stderr2 = std::sqrt(var2 / n);
  return est;
}

}  // namespace brg
