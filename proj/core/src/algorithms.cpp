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

#include "brg/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "brg/evaluation.hpp"
#include "brg/gradients.hpp"

namespace brg {

namespace {

constexpr double kPureLogit = 50.0;

void check_finite(const PolicyParams& theta, double objective) {
  if (!std::isfinite(objective) || !theta.all_finite()) {
    throw SolveError("non-finite-objective: gradient ascent diverged (learning rate too large?)");
  }
}

TraceEntry trace_entry(const Game& g, const PolicyParams& theta, const RiskMeasure& rm) {
  const UtilityMatrix um = utility_matrix(g, theta);
  TraceEntry entry;
  std::tie(entry.u1, entry.u2) = expected_utility(um, g.type_prior);
  entry.rho1 = apply(rm, dist_from_matrix(um.u1, g.type_prior)).first;
  entry.rho2 = apply(rm, dist_from_matrix(um.u2, g.type_prior)).first;
  return entry;
}

double restricted_norm(const GradTensor& grad, int player) {
  double sum = 0.0;
  for (double x : grad.player_block(player)) {
    sum += x * x;
  }
  return std::sqrt(sum);
}

struct InnerResult {
  // True when the gradient norm was already below tolerance on entry, i.e.
  // the loop made no update.
  bool at_stationary_point = false;
};

// Gradient ascent on rho(U_player) over the player's own parameters. When
// `opponent_override` is given, the objective is evaluated with the OTHER
// player's block replaced by it (used by fictitious play); theta still
// receives the updates.
InnerResult ascend_player(const Game& g, PolicyParams& theta, int player,
                          const SolverConfig& cfg, double eta,
                          std::span<const double> opponent_override = {}) {
  const int opponent = 1 - player;
  InnerResult result;
  PolicyParams override_theta;
  if (!opponent_override.empty()) {
    override_theta = theta;
    auto block = override_theta.player_block(opponent);
    if (opponent_override.size() != block.size()) {
      throw ShapeError("shape-mismatch: opponent override has the wrong size");
    }
    std::copy(opponent_override.begin(), opponent_override.end(), block.begin());
  }
  for (int t = 0; t < cfg.inner_iters; ++t) {
    if (!opponent_override.empty()) {
      // Refresh only the active player's block; the override stays fixed.
      auto src = theta.player_block(player);
      auto dst = override_theta.player_block(player);
      std::copy(src.begin(), src.end(), dst.begin());
    }
    const PolicyParams& eval_theta = opponent_override.empty() ? theta : override_theta;
    const auto [objective, grad] = objective_grad(g, eval_theta, player, cfg.risk);
    check_finite(theta, objective);
    if (restricted_norm(grad, player) < cfg.grad_tol) {
      result.at_stationary_point = (t == 0);
      return result;
    }
    auto block = theta.player_block(player);
    const auto grad_block = grad.player_block(player);
    for (std::size_t i = 0; i < block.size(); ++i) {
      block[i] += eta * grad_block[i];
    }
    if (!theta.all_finite()) {
      throw SolveError("non-finite-objective: parameters diverged");
    }
  }
  return result;
}

SolveResult solve_alternating(const Game& g, const SolverConfig& cfg, bool fictitious) {
  validate_game(g);
  validate_config(cfg);
  SolveResult result;
  result.theta = PolicyParams::initial(g, cfg.seed);
  FPAverage average;
  if (fictitious) {
    average.push(result.theta.player_block(0));
  }
  for (int i = 0; i < cfg.outer_iters; ++i) {
    const InnerResult first = ascend_player(g, result.theta, 0, cfg, cfg.eta1);
    if (fictitious) {
      average.push(result.theta.player_block(0));
    }
    const InnerResult second =
        fictitious ? ascend_player(g, result.theta, 1, cfg, cfg.eta2, average.mean())
                   : ascend_player(g, result.theta, 1, cfg, cfg.eta2);
    result.trace.push_back(trace_entry(g, result.theta, cfg.risk));
    ++result.iterations_used;
    if (first.at_stationary_point && second.at_stationary_point) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace

void validate_config(const SolverConfig& cfg) {
  if (!(cfg.eta1 > 0.0) || !(cfg.eta2 > 0.0)) {
    throw ValidationError("learning rates must be positive");
  }
  if (cfg.outer_iters < 1 || cfg.inner_iters < 1) {
    throw ValidationError("iteration counts must be at least 1");
  }
  if (!(cfg.grad_tol > 0.0)) {
    throw ValidationError("gradient tolerance must be positive");
  }
  if (cfg.risk.is_cvar() && (!(cfg.risk.alpha > 0.0) || !(cfg.risk.alpha <= 1.0))) {
    throw ValidationError("invalid-alpha: alpha must lie in (0, 1]");
  }
}

SolveResult solve_ibr(const Game& g, const SolverConfig& cfg) {
  return solve_alternating(g, cfg, /*fictitious=*/false);
}

SolveResult solve_fp(const Game& g, const SolverConfig& cfg) {
  return solve_alternating(g, cfg, /*fictitious=*/true);
}

SolveResult solve_dapg(const Game& g, const SolverConfig& cfg) {
  validate_game(g);
  validate_config(cfg);
  SolveResult result;
  result.theta = PolicyParams::initial(g, cfg.seed);
  for (int i = 0; i < cfg.outer_iters; ++i) {
    // Both objectives and all restricted gradients are evaluated at the
    // iteration-start theta; the per-type updates below are simultaneous.
    const auto [objective1, grad1] = objective_grad(g, result.theta, 0, cfg.risk);
    const auto [objective2, grad2] = objective_grad(g, result.theta, 1, cfg.risk);
    check_finite(result.theta, objective1 + objective2);
    GradTensor sum_grad = grad1;
    sum_grad.add_scaled(grad2, 1.0);
    const double norm = sum_grad.l2_norm();
    if (norm < cfg.grad_tol) {
      result.trace.push_back(trace_entry(g, result.theta, cfg.risk));
      ++result.iterations_used;
      result.converged = true;
      break;
    }
    for (int type = 0; type < g.num_types; ++type) {
      for (int player = 0; player < 2; ++player) {
        const double eta = player == 0 ? cfg.eta1 : cfg.eta2;
        auto slice = result.theta.type_slice(player, type);
        const auto grad_slice = sum_grad.type_slice(player, type);
        for (std::size_t i2 = 0; i2 < slice.size(); ++i2) {
          slice[i2] += eta * grad_slice[i2];
        }
      }
    }
    if (!result.theta.all_finite()) {
      throw SolveError("non-finite-objective: parameters diverged");
    }
    result.trace.push_back(trace_entry(g, result.theta, cfg.risk));
    ++result.iterations_used;
  }
  return result;
}

SolveResult solve_mmbi(const Game& g, const SolverConfig& cfg, int horizon) {
  validate_game(g);
  validate_config(cfg);
  if (horizon < 1) {
    throw ValidationError("horizon must be at least 1");
  }
  const int s_count = g.num_states;
  const int a1_count = g.num_actions[0];
  const int a2_count = g.num_actions[1];
  const int pair_count = g.num_type_pairs();

  // values[m][s]: stage value of type pair m at state s under the greedy
  // joint actions chosen so far.
  std::vector<std::vector<double>> values(pair_count, std::vector<double>(s_count, 0.0));
  std::vector<std::vector<double>> next_values = values;
  std::vector<int> greedy_a1(s_count, 0);
  std::vector<int> greedy_a2(s_count, 0);

  DiscreteUtilityDist atoms;
  atoms.values.assign(pair_count, 0.0);
  atoms.probs.assign(g.type_prior.begin(), g.type_prior.end());
  std::vector<double> best_atoms(pair_count, 0.0);

  for (int stage = horizon; stage >= 1; --stage) {
    for (int s = 0; s < s_count; ++s) {
      double best_score = -std::numeric_limits<double>::infinity();
      for (int a1 = 0; a1 < a1_count; ++a1) {
        for (int a2 = 0; a2 < a2_count; ++a2) {
          const auto row = g.transition_row(s, a1, a2);
          for (int j = 0; j < g.num_types; ++j) {
            for (int k = 0; k < g.num_types; ++k) {
              const int m = j * g.num_types + k;
              double next_value = 0.0;
              for (int next = 0; next < s_count; ++next) {
                next_value += row[next] * values[m][next];
              }
              const double welfare =
                  0.5 * (g.reward(0, j, s, a1, a2) + g.reward(1, k, s, a1, a2));
              atoms.values[m] = welfare + g.discount * next_value;
            }
          }
          const double score = apply(cfg.risk, atoms).first;
          if (score > best_score) {
            best_score = score;
            greedy_a1[s] = a1;
            greedy_a2[s] = a2;
            best_atoms = atoms.values;
          }
        }
      }
      for (int m = 0; m < pair_count; ++m) {
        next_values[m][s] = best_atoms[m];
      }
    }
    std::swap(values, next_values);
  }

  SolveResult result;
  result.theta = PolicyParams::zeros_like(g);
  for (int type = 0; type < g.num_types; ++type) {
    for (int s = 0; s < s_count; ++s) {
      auto row1 = result.theta.row(0, type, s);
      std::fill(row1.begin(), row1.end(), -kPureLogit);
      row1[greedy_a1[s]] = kPureLogit;
      auto row2 = result.theta.row(1, type, s);
      std::fill(row2.begin(), row2.end(), -kPureLogit);
      row2[greedy_a2[s]] = kPureLogit;
    }
  }
  result.trace.push_back(trace_entry(g, result.theta, cfg.risk));
  result.iterations_used = horizon;
  result.converged = true;
  return result;
}

SolverKind parse_solver(const std::string& name) {
  if (name == "mmbi") return SolverKind::kMmbi;
  if (name == "ibr") return SolverKind::kIbr;
  if (name == "fp") return SolverKind::kFp;
  if (name == "dapg") return SolverKind::kDapg;
  throw ValidationError("unknown-solver: '" + name + "' (expected mmbi|ibr|fp|dapg)");
}

std::string solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::kMmbi:
      return "mmbi";
    case SolverKind::kIbr:
      return "ibr";
    case SolverKind::kFp:
      return "fp";
    case SolverKind::kDapg:
      return "dapg";
  }
  throw ValidationError("unknown-solver: bad enum value");
}

SolveResult run_solver(SolverKind kind, const Game& g, const SolverConfig& cfg,
                       int mmbi_horizon) {
  switch (kind) {
    case SolverKind::kMmbi:
      return solve_mmbi(g, cfg, mmbi_horizon);
    case SolverKind::kIbr:
      return solve_ibr(g, cfg);
    case SolverKind::kFp:
      return solve_fp(g, cfg);
    case SolverKind::kDapg:
      return solve_dapg(g, cfg);
  }
  throw ValidationError("unknown-solver: bad enum value");
}

}  // namespace brg
