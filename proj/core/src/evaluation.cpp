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

#include "brg/evaluation.hpp"

#include <sstream>

namespace brg {

namespace {

void check_type(const Game& g, int type, const char* which) {
  if (type < 0 || type >= g.num_types) {
    std::ostringstream msg;
    msg << "index-out-of-range: " << which << "=" << type << " with K=" << g.num_types;
    throw IndexError(msg.str());
  }
}

}  // namespace

JointChain build_joint_chain(const Game& g, const PolicyParams& theta, int type1, int type2) {
  check_type(g, type1, "type1");
  check_type(g, type2, "type2");
  const int s_count = g.num_states;
  const int a1_count = g.num_actions[0];
  const int a2_count = g.num_actions[1];

  JointChain chain{Eigen::MatrixXd::Zero(s_count, s_count), Eigen::VectorXd::Zero(s_count),
                   Eigen::VectorXd::Zero(s_count)};
  std::vector<double> pi1(a1_count);
  std::vector<double> pi2(a2_count);
  for (int s = 0; s < s_count; ++s) {
    softmax_into(theta.row(0, type1, s), pi1);
    softmax_into(theta.row(1, type2, s), pi2);
    for (int a1 = 0; a1 < a1_count; ++a1) {
      for (int a2 = 0; a2 < a2_count; ++a2) {
        const double w = pi1[a1] * pi2[a2];
        const auto row = g.transition_row(s, a1, a2);
        for (int next = 0; next < s_count; ++next) {
          chain.P(s, next) += w * row[next];
        }
        chain.r1(s) += w * g.reward(0, type1, s, a1, a2);
        chain.r2(s) += w * g.reward(1, type2, s, a1, a2);
      }
    }
  }
  return chain;
}

std::pair<double, double> evaluate_pair(const JointChain& chain, double discount,
                                        const Eigen::VectorXd& initial_dist) {
  if (!(discount >= 0.0) || !(discount < 1.0)) {
    throw ValidationError("invalid-discount: discount must lie in [0, 1)");
  }
  const int s_count = static_cast<int>(chain.P.rows());
  Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(s_count, s_count) - discount * chain.P;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  const Eigen::VectorXd v1 = lu.solve(chain.r1);
  const Eigen::VectorXd v2 = lu.solve(chain.r2);
  if (!v1.allFinite() || !v2.allFinite()) {
    throw SolveError("singular-system: discounted evaluation solve produced non-finite values");
  }
  return {initial_dist.dot(v1), initial_dist.dot(v2)};
}

UtilityMatrix utility_matrix(const Game& g, const PolicyParams& theta) {
  const Eigen::VectorXd init = initial_distribution(g);
  UtilityMatrix um{Eigen::MatrixXd(g.num_types, g.num_types),
                   Eigen::MatrixXd(g.num_types, g.num_types)};
  for (int j = 0; j < g.num_types; ++j) {
    for (int k = 0; k < g.num_types; ++k) {
      const auto [u1, u2] = evaluate_pair(build_joint_chain(g, theta, j, k), g.discount, init);
      um.u1(j, k) = u1;
      um.u2(j, k) = u2;
    }
  }
  return um;
}

std::pair<double, double> expected_utility(const UtilityMatrix& um, std::span<const double> xi) {
  const int k_count = static_cast<int>(um.u1.rows());
  if (static_cast<int>(xi.size()) != k_count * k_count) {
    throw ShapeError("shape-mismatch: prior size does not match the utility matrix");
  }
  double u1 = 0.0;
  double u2 = 0.0;
  for (int j = 0; j < k_count; ++j) {
    for (int k = 0; k < k_count; ++k) {
      const double p = xi[static_cast<std::size_t>(j) * k_count + k];
      u1 += p * um.u1(j, k);
      u2 += p * um.u2(j, k);
    }
  }
  return {u1, u2};
}

Eigen::VectorXd initial_distribution(const Game& g) {
  Eigen::VectorXd init(g.num_states);
  for (int s = 0; s < g.num_states; ++s) {
    init(s) = g.initial_state_dist[s];
  }
  return init;
}

PairSolve solve_pair(const Game& g, const PolicyParams& theta, int type1, int type2) {
  PairSolve ps;
  ps.type1 = type1;
  ps.type2 = type2;
  ps.chain = build_joint_chain(g, theta, type1, type2);
  const int s_count = g.num_states;
  Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(s_count, s_count) - g.discount * ps.chain.P;
  ps.lu.compute(system);
  ps.v1 = ps.lu.solve(ps.chain.r1);
  ps.v2 = ps.lu.solve(ps.chain.r2);
  const Eigen::VectorXd init = initial_distribution(g);
  ps.adjoint = ps.lu.transpose().solve(init);
  if (!ps.v1.allFinite() || !ps.v2.allFinite() || !ps.adjoint.allFinite()) {
    throw SolveError("singular-system: discounted evaluation solve produced non-finite values");
  }
  ps.u1 = init.dot(ps.v1);
  ps.u2 = init.dot(ps.v2);
  return ps;
}

std::vector<PairSolve> solve_all_pairs(const Game& g, const PolicyParams& theta) {
  std::vector<PairSolve> pairs;
  pairs.reserve(g.num_type_pairs());
  for (int j = 0; j < g.num_types; ++j) {
    for (int k = 0; k < g.num_types; ++k) {
      pairs.push_back(solve_pair(g, theta, j, k));
    }
  }
  return pairs;
}

}  // namespace brg
