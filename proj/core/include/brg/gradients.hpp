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

#ifndef BRG_GRADIENTS_HPP_
#define BRG_GRADIENTS_HPP_

#include <optional>
#include <utility>

#include "brg/evaluation.hpp"
#include "brg/game.hpp"
#include "brg/risk.hpp"

namespace brg {

// Exact gradient of U_player^{type1,type2} with respect to the whole
// parameter tensor, obtained by implicit differentiation of the evaluation
// system (I - discount * P) v = r. Support is exactly the (player 1, type1)
// and (player 2, type2) slices; every row sums to zero.
GradTensor pair_utility_grad(const Game& g, const PolicyParams& theta, int type1, int type2,
                             int player);

// Scalar objective rho(U_player) under the given risk measure. Shares the
// evaluation path with objective_grad.
double objective_value(const Game& g, const PolicyParams& theta, int player,
                       const RiskMeasure& rm);

// Objective and its gradient: the distortion weights of the player's
// utility distribution are treated as locally constant, so the result is
// the weight-mixed sum of per-type-pair utility gradients (a valid CVaR
// subgradient wherever the atom ordering is locally stable).
std::pair<double, GradTensor> objective_grad(const Game& g, const PolicyParams& theta,
                                             int player, const RiskMeasure& rm);

// Copy of `full` with every slice zeroed except the requested player (and
// type, when given).
GradTensor restricted_grad(const GradTensor& full, int player,
                           std::optional<int> type = std::nullopt);

// Central finite differences of the scalar objective over every coordinate;
// test oracle for the analytic path.
GradTensor finite_diff_grad(const Game& g, const PolicyParams& theta, int player,
                            const RiskMeasure& rm, double step = 1e-5);

}  // namespace brg

#endif  // BRG_GRADIENTS_HPP_
