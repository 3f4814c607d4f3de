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

#include "brg/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "brg/errors.hpp"
#include "brg/game.hpp"

namespace brg {

namespace {

void check_dist(const DiscreteUtilityDist& d) {
  if (d.values.size() != d.probs.size() || d.values.empty()) {
    throw ShapeError("shape-mismatch: values and probs must be non-empty and equally long");
  }
  double sum = 0.0;
  for (double p : d.probs) {
    if (p < 0.0 || !std::isfinite(p)) {
      throw ValidationError("utility distribution has a negative or non-finite probability");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTol) {
    std::ostringstream msg;
    msg << "utility distribution probabilities sum to " << sum;
    throw ValidationError(msg.str());
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    std::ostringstream msg;
    msg << "invalid-alpha: alpha must lie in (0, 1], got " << alpha;
    throw ValidationError(msg.str());
  }
}

double weighted_sum(std::span<const double> weights, std::span<const double> values) {
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += weights[i] * values[i];
  }
  return sum;
}

}  // namespace

DiscreteUtilityDist dist_from_matrix(const Eigen::MatrixXd& u, std::span<const double> xi) {
  const int k_count = static_cast<int>(u.rows());
  if (u.cols() != k_count || static_cast<int>(xi.size()) != k_count * k_count) {
    throw ShapeError("shape-mismatch: utility matrix and prior disagree on K");
  }
  DiscreteUtilityDist d;
  d.values.reserve(xi.size());
  d.probs.assign(xi.begin(), xi.end());
  for (int j = 0; j < k_count; ++j) {
    for (int k = 0; k < k_count; ++k) {
      d.values.push_back(u(j, k));
    }
  }
  return d;
}

std::vector<double> distortion_weights(const DiscreteUtilityDist& d, double alpha) {
  check_alpha(alpha);
  check_dist(d);
  // No distortion at alpha == 1; returning the probabilities verbatim makes
  // CVaR_1 coincide with the expectation bit for bit.
  if (alpha == 1.0) {
    return d.probs;
  }

  std::vector<std::size_t> order(d.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d.values[a] < d.values[b]; });

  std::vector<double> weights(d.values.size(), 0.0);
  double remaining = alpha;
  for (std::size_t idx : order) {
    if (remaining <= 0.0) {
      break;
    }
    const double consumed = std::min(remaining, d.probs[idx]);
    weights[idx] = consumed / alpha;
    remaining -= consumed;
  }
  return weights;
}

double cvar(const DiscreteUtilityDist& d, double alpha) {
  const std::vector<double> weights = distortion_weights(d, alpha);
  return weighted_sum(weights, d.values);
}

std::string RiskMeasure::name() const {
  if (!is_cvar()) {
    return "expectation";
  }
  std::ostringstream out;
  out << "cvar(" << alpha << ")";
  return out.str();
}

std::pair<double, std::vector<double>> apply(const RiskMeasure& rm,
                                             const DiscreteUtilityDist& d) {
  if (rm.kind == RiskMeasure::Kind::kExpectation) {
    check_dist(d);
    return {weighted_sum(d.probs, d.values), d.probs};
  }
  std::vector<double> weights = distortion_weights(d, rm.alpha);
  const double objective = weighted_sum(weights, d.values);
  return {objective, std::move(weights)};
}

}  // namespace brg
