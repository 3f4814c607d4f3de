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

#ifndef BRG_RISK_HPP_
#define BRG_RISK_HPP_

#include <Eigen/Dense>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace brg {

// Discrete distribution of a player's utility over type-pair realizations.
// When built from a utility matrix, atom m corresponds to the type pair
// (m / K, m % K), i.e. pairs are flattened row major.
struct DiscreteUtilityDist {
  std::vector<double> values;
  std::vector<double> probs;
};

DiscreteUtilityDist dist_from_matrix(const Eigen::MatrixXd& u, std::span<const double> xi);

// Perturbed-distribution weights realizing lower-tail CVaR at level alpha:
// atoms are taken in ascending value order (ties by original index) until
// alpha probability mass is consumed; the boundary atom gets fractional
// weight, everything above gets zero. The returned weights are in original
// atom order, are nonnegative, and sum to one. alpha == 1 reproduces the
// atom probabilities exactly, so CVaR_1 is the plain expectation.
std::vector<double> distortion_weights(const DiscreteUtilityDist& d, double alpha);

// Lower-tail CVaR: the expected utility within the worst alpha-probability
// tail, i.e. dot(distortion_weights(d, alpha), d.values). Smaller utilities
// are worse; CVaR never exceeds the mean.
double cvar(const DiscreteUtilityDist& d, double alpha);

// Scalar risk functional applied to a discrete utility distribution:
// the risk-neutral expectation or CVaR at a fixed level.
struct RiskMeasure {
  enum class Kind { kExpectation, kCvar };

  Kind kind = Kind::kExpectation;
  double alpha = 1.0;

  static RiskMeasure expectation() { return {Kind::kExpectation, 1.0}; }
  static RiskMeasure cvar(double alpha) { return {Kind::kCvar, alpha}; }

  bool is_cvar() const { return kind == Kind::kCvar; }
  std::string name() const;
};

// Applies the measure, returning the scalar objective and the weight vector
// under which the objective is a plain weighted sum of the atom values. The
// weights double as the fixed mixing vector for risk-adjusted gradients.
std::pair<double, std::vector<double>> apply(const RiskMeasure& rm,
                                             const DiscreteUtilityDist& d);

}  // namespace brg

#endif  // BRG_RISK_HPP_
