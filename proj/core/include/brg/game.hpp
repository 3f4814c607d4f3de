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

#ifndef BRG_GAME_HPP_
#define BRG_GAME_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "brg/errors.hpp"

namespace brg {

// Tolerance for probability rows/vectors summing to one.
inline constexpr double kProbSumTol = 1e-9;

// Finite two-player Bayesian stochastic game. Both players share the state
// space and transition kernel; each player owns one reward tensor per type
// and the type pair is drawn once from the joint prior. Tensors are flat,
// row-major.
//
// Immutable after construction by convention; safe to share across threads.
struct Game {
  int num_states = 0;
  std::array<int, 2> num_actions = {0, 0};
  int num_types = 0;
  // rewards[player][type][state][a1][a2]; the type axis is the owning
  // player's own type.
  std::vector<double> rewards;
  // transition[state][a1][a2][next_state]; each [state][a1][a2] row is a
  // distribution over next states.
  std::vector<double> transition;
  // type_prior[j][k] = Pr(tau1 = j, tau2 = k).
  std::vector<double> type_prior;
  double discount = 0.0;
  std::vector<double> initial_state_dist;

  int num_type_pairs() const { return num_types * num_types; }

  std::size_t reward_index(int player, int type, int state, int a1, int a2) const {
    return (((static_cast<std::size_t>(player) * num_types + type) * num_states + state) *
                num_actions[0] +
            a1) *
               num_actions[1] +
           a2;
  }
  double reward(int player, int type, int state, int a1, int a2) const {
    return rewards[reward_index(player, type, state, a1, a2)];
  }

  std::size_t transition_index(int state, int a1, int a2, int next) const {
    return ((static_cast<std::size_t>(state) * num_actions[0] + a1) * num_actions[1] + a2) *
               num_states +
           next;
  }
  double transition_prob(int state, int a1, int a2, int next) const {
    return transition[transition_index(state, a1, a2, next)];
  }
  std::span<const double> transition_row(int state, int a1, int a2) const {
    return {transition.data() + transition_index(state, a1, a2, 0),
            static_cast<std::size_t>(num_states)};
  }

  double prior(int type1, int type2) const {
    return type_prior[static_cast<std::size_t>(type1) * num_types + type2];
  }
};

// Throws ValidationError unless every Game invariant holds: mutually
// consistent tensor dimensions, row-stochastic transition rows, a prior and
// initial distribution that are nonnegative and sum to one within
// kProbSumTol, and a discount in [0, 1). Error messages identify the
// offending index.
void validate_game(const Game& g);

// Full softmax-policy parameter tensor, indexed by
// (player, type, state, action) with per-player action counts. Player
// blocks are contiguous. Also used for gradients, which share the layout.
class PolicyParams {
 public:
  PolicyParams() = default;
  PolicyParams(int num_types, int num_states, std::array<int, 2> num_actions);

  // All-zero logits, i.e. uniform policies everywhere.
  static PolicyParams zeros_like(const Game& g);
  // seed == 0 keeps the all-zero initialisation; otherwise entries are
  // drawn i.i.d. from Normal(0, stddev^2) under the seed.
  static PolicyParams initial(const Game& g, std::uint64_t seed, double stddev = 0.01);

  int num_types() const { return num_types_; }
  int num_states() const { return num_states_; }
  int num_actions(int player) const { return num_actions_[check_player(player)]; }
  std::size_t size() const { return data_.size(); }

  double at(int player, int type, int state, int action) const {
    return data_[index(player, type, state, action)];
  }
  double& at(int player, int type, int state, int action) {
    return data_[index(player, type, state, action)];
  }

  // Logit row over one player's actions for a (type, state) cell.
  std::span<const double> row(int player, int type, int state) const {
    return {data_.data() + index(player, type, state, 0),
            static_cast<std::size_t>(num_actions_[player])};
  }
  std::span<double> row(int player, int type, int state) {
    return {data_.data() + index(player, type, state, 0),
            static_cast<std::size_t>(num_actions_[player])};
  }

  // Contiguous block of all of one player's parameters.
  std::span<const double> player_block(int player) const;
  std::span<double> player_block(int player);
  // One (player, type) slice: the per-type policy table.
  std::span<const double> type_slice(int player, int type) const;
  std::span<double> type_slice(int player, int type);

  std::span<const double> flat() const { return data_; }
  std::span<double> flat() { return data_; }

  bool same_shape(const PolicyParams& other) const;
  bool all_finite() const;

  void fill(double value);
  // this += scale * other (shapes must match).
  void add_scaled(const PolicyParams& other, double scale);
  double l2_norm() const;

 private:
  static int check_player(int player);
  std::size_t index(int player, int type, int state, int action) const;

  int num_types_ = 0;
  int num_states_ = 0;
  std::array<int, 2> num_actions_ = {0, 0};
  std::size_t player2_offset_ = 0;
  std::vector<double> data_;
};

// Gradients of a scalar objective with respect to theta; same layout as the
// parameters themselves. Within each (player, type, state) row the entries
// sum to zero because softmax policies are shift invariant.
using GradTensor = PolicyParams;

// Action distribution pi(a | state) = exp(theta_a) / sum_a' exp(theta_a'),
// computed with max-subtraction so huge logits cannot overflow.
std::vector<double> softmax_policy(const PolicyParams& theta, int player, int type, int state);

// In-place variant; `out` must have logits.size() entries.
void softmax_into(std::span<const double> logits, std::span<double> out);

// Running arithmetic mean of parameter tensors, used by fictitious play to
// track the rolling average of one player's past parameters.
class FPAverage {
 public:
  FPAverage() = default;

  // Adds one tensor; the first push fixes the shape, later pushes must
  // match it (ShapeError otherwise).
  void push(std::span<const double> value);

  std::span<const double> mean() const { return mean_; }
  std::int64_t count() const { return count_; }

 private:
  std::vector<double> mean_;
  std::int64_t count_ = 0;
};

}  // namespace brg

#endif  // BRG_GAME_HPP_
