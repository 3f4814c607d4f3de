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

#include "brg/gradients.hpp"

#include <vector>

namespace brg {

namespace {

void check_player(int player) {
  if (player < 0 || player > 1) {
    throw IndexError("index-out-of-range: player must be 0 or 1");
  }
}

// Accumulates scale * d U_target^{j,k} / d theta into grad.
//
// With U = init' (I - g P)^{-1} r, perturbing theta gives
//   dU = w' (dr + g dP v),   (I - g P)' w = init,
// and both dr and dP are linear in the softmax Jacobian
// d pi(a|s) / d theta_b = pi_a (delta_ab - pi_b). Collecting terms per state
// yields the advantage form: the theta_b component is
//   w[s] * pi_b * (q_b - sum_a pi_a q_a)
// with q the value of the player's own action against the opponent's
// current mixture.
void accumulate_pair_grad(const Game& g, const PolicyParams& theta, const PairSolve& ps,
                          int target, double scale, GradTensor& grad) {
  const int s_count = g.num_states;
  const int a1_count = g.num_actions[0];
  const int a2_count = g.num_actions[1];
  const int j = ps.type1;
  const int k = ps.type2;
  const Eigen::VectorXd& value = target == 0 ? ps.v1 : ps.v2;
  const int reward_type = target == 0 ? j : k;

  std::vector<double> pi1(a1_count);
  std::vector<double> pi2(a2_count);
  Eigen::MatrixXd joint_q(a1_count, a2_count);
  for (int s = 0; s < s_count; ++s) {
    softmax_into(theta.row(0, j, s), pi1);
    softmax_into(theta.row(1, k, s), pi2);

    // joint_q(a1, a2) = r_target(s, a1, a2) + g * T(s, a1, a2, .) . value
    for (int a1 = 0; a1 < a1_count; ++a1) {
      for (int a2 = 0; a2 < a2_count; ++a2) {
        const auto row = g.transition_row(s, a1, a2);
        double next_value = 0.0;
        for (int next = 0; next < s_count; ++next) {
          next_value += row[next] * value(next);
        }
        joint_q(a1, a2) = g.reward(target, reward_type, s, a1, a2) + g.discount * next_value;
      }
    }

    // Own-action values against the opponent mixture.
    std::vector<double> q1(a1_count, 0.0);
    std::vector<double> q2(a2_count, 0.0);
    for (int a1 = 0; a1 < a1_count; ++a1) {
      for (int a2 = 0; a2 < a2_count; ++a2) {
        q1[a1] += pi2[a2] * joint_q(a1, a2);
        q2[a2] += pi1[a1] * joint_q(a1, a2);
      }
    }
    double mean_q1 = 0.0;
    for (int a1 = 0; a1 < a1_count; ++a1) {
      mean_q1 += pi1[a1] * q1[a1];
    }
    double mean_q2 = 0.0;
    for (int a2 = 0; a2 < a2_count; ++a2) {
      mean_q2 += pi2[a2] * q2[a2];
    }

    const double occupancy = scale * ps.adjoint(s);
    for (int b = 0; b < a1_count; ++b) {
      grad.at(0, j, s, b) += occupancy * pi1[b] * (q1[b] - mean_q1);
    }
    for (int b = 0; b < a2_count; ++b) {
      grad.at(1, k, s, b) += occupancy * pi2[b] * (q2[b] - mean_q2);
    }
  }
}

DiscreteUtilityDist player_dist(const Game& g, const std::vector<PairSolve>& pairs, int player) {
  DiscreteUtilityDist d;
  d.values.reserve(pairs.size());
  d.probs.assign(g.type_prior.begin(), g.type_prior.end());
  for (const PairSolve& ps : pairs) {
    d.values.push_back(player == 0 ? ps.u1 : ps.u2);
  }
  return d;
}

}  // namespace

GradTensor pair_utility_grad(const Game& g, const PolicyParams& theta, int type1, int type2,
                             int player) {
  check_player(player);
  GradTensor grad = PolicyParams::zeros_like(g);
  const PairSolve ps = solve_pair(g, theta, type1, type2);
  accumulate_pair_grad(g, theta, ps, player, 1.0, grad);
  return grad;
}

double objective_value(const Game& g, const PolicyParams& theta, int player,
                       const RiskMeasure& rm) {
  check_player(player);
  const UtilityMatrix um = utility_matrix(g, theta);
  return apply(rm, dist_from_matrix(player == 0 ? um.u1 : um.u2, g.type_prior)).first;
}

std::pair<double, GradTensor> objective_grad(const Game& g, const PolicyParams& theta,
                                             int player, const RiskMeasure& rm) {
  check_player(player);
  const std::vector<PairSolve> pairs = solve_all_pairs(g, theta);
  const auto [objective, weights] = apply(rm, player_dist(g, pairs, player));
  GradTensor grad = PolicyParams::zeros_like(g);
  for (std::size_t m = 0; m < pairs.size(); ++m) {
    if (weights[m] != 0.0) {
      accumulate_pair_grad(g, theta, pairs[m], player, weights[m], grad);
    }
  }
  return {objective, std::move(grad)};
}

GradTensor restricted_grad(const GradTensor& full, int player, std::optional<int> type) {
  check_player(player);
  GradTensor out(full.num_types(), full.num_states(),
                 {full.num_actions(0), full.num_actions(1)});
  if (type.has_value()) {
    const auto src = full.type_slice(player, *type);  // validates the type index
    auto dst = out.type_slice(player, *type);
    std::copy(src.begin(), src.end(), dst.begin());
  } else {
    const auto src = full.player_block(player);
    auto dst = out.player_block(player);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return out;
}

GradTensor finite_diff_grad(const Game& g, const PolicyParams& theta, int player,
                            const RiskMeasure& rm, double step) {
  if (!(step > 0.0)) {
    throw ValidationError("finite difference step must be positive");
  }
  GradTensor grad = PolicyParams::zeros_like(g);
  PolicyParams probe = theta;
  auto coords = probe.flat();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const double saved = coords[i];
    coords[i] = saved + step;
    const double up = objective_value(g, probe, player, rm);
    coords[i] = saved - step;
    const double down = objective_value(g, probe, player, rm);
    coords[i] = saved;
    grad.flat()[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

}  // namespace brg
