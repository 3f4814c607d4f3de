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

#ifndef BRG_EVALUATION_HPP_
#define BRG_EVALUATION_HPP_

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "brg/game.hpp"

namespace brg {

// Markov chain induced on the state space by committing player 1 to its
// type-j policy and player 2 to its type-k policy. P is row stochastic;
// r1/r2 are the players' expected one-step rewards under the joint action
// mixture.
struct JointChain {
  Eigen::MatrixXd P;
  Eigen::VectorXd r1;
  Eigen::VectorXd r2;
};

JointChain build_joint_chain(const Game& g, const PolicyParams& theta, int type1, int type2);

// Exact discounted utilities of both players for one committed type pair:
// solves (I - discount * P) v = r by dense LU and returns the initial-
// distribution-weighted values. Throws SolveError if the solve produces
// non-finite values (cannot happen for a stochastic P and discount < 1).
std::pair<double, double> evaluate_pair(const JointChain& chain, double discount,
                                        const Eigen::VectorXd& initial_dist);

// K x K grids of exact utilities, entry (j, k) for the pair tau1=j, tau2=k.
struct UtilityMatrix {
  Eigen::MatrixXd u1;
  Eigen::MatrixXd u2;
};

UtilityMatrix utility_matrix(const Game& g, const PolicyParams& theta);

// Prior-weighted utilities (U1, U2) = sum_{j,k} xi[j][k] * u[j][k].
std::pair<double, double> expected_utility(const UtilityMatrix& um, std::span<const double> xi);

Eigen::VectorXd initial_distribution(const Game& g);

// Everything the gradient assembly needs for one type pair, computed once:
// the chain, the LU factorization of (I - discount * P), both value vectors,
// the adjoint solve (I - discount * P)^T w = initial_dist, and the scalar
// utilities.
struct PairSolve {
  int type1 = 0;
  int type2 = 0;
  JointChain chain;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  Eigen::VectorXd v1;
  Eigen::VectorXd v2;
  Eigen::VectorXd adjoint;
  double u1 = 0.0;
  double u2 = 0.0;
};

PairSolve solve_pair(const Game& g, const PolicyParams& theta, int type1, int type2);

// All K^2 pair solves in row-major (type1, type2) order.
std::vector<PairSolve> solve_all_pairs(const Game& g, const PolicyParams& theta);

}  // namespace brg

#endif  // BRG_EVALUATION_HPP_
