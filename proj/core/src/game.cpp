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

#include "brg/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "brg/rng.hpp"

namespace brg {

namespace {

bool sums_to_one(std::span<const double> values, double* sum_out) {
  double sum = 0.0;
  for (double v : values) {
    if (v < 0.0 || !std::isfinite(v)) {
      *sum_out = v;
      return false;
    }
    sum += v;
  }
  *sum_out = sum;
  return std::abs(sum - 1.0) <= kProbSumTol;
}

}  // namespace

void validate_game(const Game& g) {
  std::ostringstream msg;
  if (g.num_states <= 0 || g.num_actions[0] <= 0 || g.num_actions[1] <= 0 || g.num_types <= 0) {
    msg << "dimension-mismatch: all dimensions must be positive, got |S|=" << g.num_states
        << " |A1|=" << g.num_actions[0] << " |A2|=" << g.num_actions[1] << " K=" << g.num_types;
    throw ValidationError(msg.str());
  }
  const std::size_t s = g.num_states;
  const std::size_t a1 = g.num_actions[0];
  const std::size_t a2 = g.num_actions[1];
  const std::size_t k = g.num_types;
  if (g.rewards.size() != 2 * k * s * a1 * a2) {
    msg << "dimension-mismatch: rewards has " << g.rewards.size() << " entries, expected "
        << 2 * k * s * a1 * a2;
    throw ValidationError(msg.str());
  }
  if (g.transition.size() != s * a1 * a2 * s) {
    msg << "dimension-mismatch: transition has " << g.transition.size() << " entries, expected "
        << s * a1 * a2 * s;
    throw ValidationError(msg.str());
  }
  if (g.type_prior.size() != k * k) {
    msg << "dimension-mismatch: type_prior has " << g.type_prior.size() << " entries, expected "
        << k * k;
    throw ValidationError(msg.str());
  }
  if (g.initial_state_dist.size() != s) {
    msg << "dimension-mismatch: initial_state_dist has " << g.initial_state_dist.size()
        << " entries, expected " << s;
    throw ValidationError(msg.str());
  }

  if (!(g.discount >= 0.0) || !(g.discount < 1.0)) {
    msg << "invalid-discount: discount must lie in [0, 1), got " << g.discount;
    throw ValidationError(msg.str());
  }

  for (int state = 0; state < g.num_states; ++state) {
    for (int i = 0; i < g.num_actions[0]; ++i) {
      for (int j = 0; j < g.num_actions[1]; ++j) {
        double sum = 0.0;
        if (!sums_to_one(g.transition_row(state, i, j), &sum)) {
          msg << "non-stochastic-row: transition[s=" << state << "][a1=" << i << "][a2=" << j
              << "] sums to " << sum;
          throw ValidationError(msg.str());
        }
      }
    }
  }

  double sum = 0.0;
  if (!sums_to_one(g.type_prior, &sum)) {
    msg << "non-stochastic-row: type_prior sums to " << sum;
    throw ValidationError(msg.str());
  }
  if (!sums_to_one(g.initial_state_dist, &sum)) {
    msg << "non-stochastic-row: initial_state_dist sums to " << sum;
    throw ValidationError(msg.str());
  }

  for (double r : g.rewards) {
    if (!std::isfinite(r)) {
      throw ValidationError("dimension-mismatch: rewards contain a non-finite entry");
    }
  }
}

PolicyParams::PolicyParams(int num_types, int num_states, std::array<int, 2> num_actions)
    : num_types_(num_types), num_states_(num_states), num_actions_(num_actions) {
  if (num_types <= 0 || num_states <= 0 || num_actions[0] <= 0 || num_actions[1] <= 0) {
    throw ValidationError("policy parameters need positive dimensions");
  }
  player2_offset_ =
      static_cast<std::size_t>(num_types) * num_states * num_actions[0];
  data_.assign(player2_offset_ + static_cast<std::size_t>(num_types) * num_states * num_actions[1],
               0.0);
}

PolicyParams PolicyParams::zeros_like(const Game& g) {
  return PolicyParams(g.num_types, g.num_states, g.num_actions);
}

PolicyParams PolicyParams::initial(const Game& g, std::uint64_t seed, double stddev) {
  PolicyParams theta = zeros_like(g);
  if (seed != 0) {
    Rng rng(seed);
    for (double& x : theta.data_) {
      x = rng.normal(0.0, stddev);
    }
  }
  return theta;
}

int PolicyParams::check_player(int player) {
  if (player < 0 || player > 1) {
    throw IndexError("player index must be 0 or 1");
  }
  return player;
}

std::size_t PolicyParams::index(int player, int type, int state, int action) const {
  check_player(player);
  if (type < 0 || type >= num_types_ || state < 0 || state >= num_states_ || action < 0 ||
      action >= num_actions_[player]) {
    std::ostringstream msg;
    msg << "index-out-of-range: (player=" << player << ", type=" << type << ", state=" << state
        << ", action=" << action << ") for shape (2, " << num_types_ << ", " << num_states_
        << ", {" << num_actions_[0] << ", " << num_actions_[1] << "})";
    throw IndexError(msg.str());
  }
  const std::size_t base = player == 0 ? 0 : player2_offset_;
  return base + (static_cast<std::size_t>(type) * num_states_ + state) * num_actions_[player] +
         action;
}

std::span<const double> PolicyParams::player_block(int player) const {
  check_player(player);
  const std::size_t begin = player == 0 ? 0 : player2_offset_;
  const std::size_t end = player == 0 ? player2_offset_ : data_.size();
  return {data_.data() + begin, end - begin};
}

std::span<double> PolicyParams::player_block(int player) {
  check_player(player);
  const std::size_t begin = player == 0 ? 0 : player2_offset_;
  const std::size_t end = player == 0 ? player2_offset_ : data_.size();
  return {data_.data() + begin, end - begin};
}

std::span<const double> PolicyParams::type_slice(int player, int type) const {
  const std::size_t begin = index(player, type, 0, 0);
  const std::size_t len = static_cast<std::size_t>(num_states_) * num_actions_[player];
  return {data_.data() + begin, len};
}

std::span<double> PolicyParams::type_slice(int player, int type) {
  const std::size_t begin = index(player, type, 0, 0);
  const std::size_t len = static_cast<std::size_t>(num_states_) * num_actions_[player];
  return {data_.data() + begin, len};
}

bool PolicyParams::same_shape(const PolicyParams& other) const {
  return num_types_ == other.num_types_ && num_states_ == other.num_states_ &&
         num_actions_ == other.num_actions_;
}

bool PolicyParams::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

void PolicyParams::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

void PolicyParams::add_scaled(const PolicyParams& other, double scale) {
  if (!same_shape(other)) {
    throw ShapeError("shape-mismatch: cannot combine parameter tensors of different shapes");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] += scale * other.data_[i];
  }
}

double PolicyParams::l2_norm() const {
  double sum = 0.0;
  for (double x : data_) {
    sum += x * x;
  }
  return std::sqrt(sum);
}

std::vector<double> softmax_policy(const PolicyParams& theta, int player, int type, int state) {
  const auto logits = theta.row(player, type, state);
  std::vector<double> out(logits.size());
  softmax_into(logits, out);
  return out;
}

void softmax_into(std::span<const double> logits, std::span<double> out) {
  const double max_logit = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - max_logit);
    sum += out[i];
  }
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] /= sum;
  }
}

void FPAverage::push(std::span<const double> value) {
  if (count_ == 0 && mean_.empty()) {
    mean_.assign(value.begin(), value.end());
    count_ = 1;
    return;
  }
  if (value.size() != mean_.size()) {
    throw ShapeError("shape-mismatch: pushed tensor does not match the running mean's shape");
  }
  ++count_;
  const double step = 1.0 / static_cast<double>(count_);
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    mean_[i] += (value[i] - mean_[i]) * step;
  }
}

}  // namespace brg
