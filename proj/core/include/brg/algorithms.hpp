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

#ifndef BRG_ALGORITHMS_HPP_
#define BRG_ALGORITHMS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "brg/game.hpp"
#include "brg/risk.hpp"

namespace brg {

struct SolverConfig {
  double eta1 = 0.1;
  double eta2 = 0.1;
  RiskMeasure risk = RiskMeasure::expectation();
  // The "until convergence" loops are realized as iteration caps plus a
  // gradient-norm tolerance.
  int outer_iters = 200;
  int inner_iters = 50;
  double grad_tol = 1e-6;
  // Theta initialisation: 0 keeps all-zero logits (uniform policies);
  // any other value seeds Normal(0, 0.01) jitter.
  std::uint64_t seed = 0;
};

void validate_config(const SolverConfig& cfg);

// One row per executed outer iteration: exact utilities and risk-adjusted
// utilities of the current parameters.
struct TraceEntry {
  double u1 = 0.0;
  double u2 = 0.0;
  double rho1 = 0.0;
  double rho2 = 0.0;
};

struct SolveResult {
  PolicyParams theta;
  std::vector<TraceEntry> trace;
  bool converged = false;
  int iterations_used = 0;
};

// Iterated best response (Expectation) / risk-sensitive IBR (CVaR): player 1
// runs an inner gradient-ascent loop on rho(U1) with theta2 frozen, then
// player 2 ascends rho(U2) against the updated theta1.
SolveResult solve_ibr(const Game& g, const SolverConfig& cfg);

// Fictitious play: like IBR, except player 2's objective is evaluated
// against the rolling average of player 1's past outer iterates (the
// initial theta1 counts as iterate zero). Trace utilities are always
// reported against the current theta1.
SolveResult solve_fp(const Game& g, const SolverConfig& cfg);

// Dual ascent policy gradient: per outer iteration, every (player, type)
// slice takes a simultaneous step along the restricted gradient of
// rho(U1) + rho(U2), all gradients evaluated at the iteration-start theta.
SolveResult solve_dapg(const Game& g, const SolverConfig& cfg);

// Backward-induction baseline producing pure strategies for the
// social-welfare Bayesian MDP: at each stage and state one joint action is
// chosen greedily to maximize the risk functional (cfg.risk) of the
// stage-value atoms over type pairs, weighted by the prior. The stage-1
// greedy actions define stationary deterministic policies, encoded as +/-50
// logits; the trace holds their exact infinite-horizon utilities.
SolveResult solve_mmbi(const Game& g, const SolverConfig& cfg, int horizon = 50);

enum class SolverKind { kMmbi, kIbr, kFp, kDapg };

// Parses "mmbi" | "ibr" | "fp" | "dapg" (ValidationError on anything else).
SolverKind parse_solver(const std::string& name);
std::string solver_name(SolverKind kind);

SolveResult run_solver(SolverKind kind, const Game& g, const SolverConfig& cfg,
                       int mmbi_horizon = 50);

}  // namespace brg

#endif  // BRG_ALGORITHMS_HPP_
