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

#ifndef BRG_EXPERIMENTS_HPP_
#define BRG_EXPERIMENTS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "brg/algorithms.hpp"
#include "brg/game.hpp"

namespace brg {

enum class XiMode { kUniform, kDirichlet };

// Random-game family: transition rows drawn from Dirichlet(dirichlet_alpha),
// rewards i.i.d. Normal(reward_mean, reward_std^2), prior uniform or
// Dirichlet over the K^2 type pairs. Games are a pure function of
// (master_seed, game index).
struct GeneratorSpec {
  int num_states = 3;
  std::array<int, 2> num_actions = {2, 2};
  int num_types = 2;
  double dirichlet_alpha = 1.0;
  double reward_mean = 0.0;
  double reward_std = 1.0;
  double discount = 0.9;
  XiMode xi_mode = XiMode::kUniform;
  std::uint64_t master_seed = 0;
};

void validate_spec(const GeneratorSpec& spec);

Game generate_game(const GeneratorSpec& spec, std::uint64_t index);

// One solver column of the experiment tables: a base algorithm plus the
// objective it optimizes.
struct SolverSpec {
  std::string label;  // e.g. "RS-DAPG"
  SolverKind kind = SolverKind::kDapg;
  RiskMeasure risk;
};

// MMBI, IBR, FP, DAPG and their risk-sensitive CVaR(alpha) versions.
std::vector<SolverSpec> default_solver_set(double alpha);

struct PerGameRecord {
  std::uint64_t game_index = 0;
  std::string solver;
  double u1 = 0.0;
  double u2 = 0.0;
  double sw = 0.0;
  double cvar_u1 = 0.0;
  double cvar_u2 = 0.0;
  double cvar_sw = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct MetricStat {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

struct MetricRow {
  std::string algorithm;
  MetricStat social_welfare;
  MetricStat cvar_social_welfare;
  MetricStat u1;
  MetricStat u2;
  MetricStat cvar_u1;
  MetricStat cvar_u2;
  int games_used = 0;
  int failures = 0;
};

struct CellFailure {
  std::uint64_t game_index = 0;
  std::string solver;
  std::string message;
};

struct BatchResult {
  std::vector<MetricRow> rows;           // one per solver, in solver order
  std::vector<PerGameRecord> records;    // (game, solver) order
  std::vector<CellFailure> failures;
};

// Runs every solver on the same generated games (paired design), evaluates
// the final parameters exactly, and aggregates mean and population standard
// deviation per metric. CVaR metrics use metric_alpha regardless of the
// solvers' own objectives; the CVaR social-welfare metric applies CVaR to
// the distribution of per-type-pair welfare atoms (u1 + u2) / 2.
BatchResult run_batch(const GeneratorSpec& spec, std::span<const SolverSpec> solvers,
                      const SolverConfig& cfg, int num_games, double metric_alpha,
                      int jobs = 1, int mmbi_horizon = 50);

// A point in a named two-objective space (both coordinates maximized).
struct ParetoPoint {
  std::string algorithm;
  double x = 0.0;
  double y = 0.0;
  std::string space;
};

// Non-domination flags: point p is dominated iff some other point is >= in
// both coordinates and strictly greater in at least one. Points with
// identical coordinates do not dominate each other. All points must share
// one objective space.
std::vector<bool> pareto_front(std::span<const ParetoPoint> points);

// Standalone SVG scatter of the points with front members highlighted and
// the dominated region shaded.
std::string pareto_svg(std::span<const ParetoPoint> points, const std::vector<bool>& on_front,
                       const std::string& x_label, const std::string& y_label);

}  // namespace brg

#endif  // BRG_EXPERIMENTS_HPP_
