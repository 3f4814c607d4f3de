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
//
// Brute-force oracles used by tests only. Each is deliberately written
// against the mathematical definition, independent of the library's
// implementation path.

#ifndef BRG_TESTS_SUPPORT_ORACLES_HPP_
#define BRG_TESTS_SUPPORT_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "brg/experiments.hpp"
#include "brg/risk.hpp"

namespace brg::testing {

// CVaR via the quantile function: (1/alpha) * integral_0^alpha F^{-1}(u) du,
// accumulated exactly cell by cell over a uniform partition of (0, alpha].
// F^{-1} is the empirical quantile function of the sorted atoms, so each
// cell's integral is a sum of value * overlapped-mass terms.
inline double cvar_quantile_oracle(const DiscreteUtilityDist& d, double alpha,
                                   int cells = 10000) {
  std::vector<std::size_t> order(d.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d.values[a] < d.values[b]; });

  // Cumulative mass boundaries of the sorted atoms.
  std::vector<double> cum_start(order.size());
  std::vector<double> cum_end(order.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    cum_start[i] = acc;
    acc += d.probs[order[i]];
    cum_end[i] = acc;
  }

  double integral = 0.0;
  std::size_t atom = 0;
  for (int cell = 0; cell < cells; ++cell) {
    const double lo = alpha * static_cast<double>(cell) / cells;
    const double hi = alpha * static_cast<double>(cell + 1) / cells;
    while (atom < order.size() && cum_end[atom] <= lo) {
      ++atom;
    }
    for (std::size_t a = atom; a < order.size(); ++a) {
      const double seg_lo = std::max(lo, cum_start[a]);
      const double seg_hi = std::min(hi, cum_end[a]);
      if (seg_hi > seg_lo) {
        integral += d.values[order[a]] * (seg_hi - seg_lo);
      }
      if (cum_end[a] >= hi) {
        break;
      }
    }
  }
  return integral / alpha;
}

// O(n^2) dominance check straight from the definition: p is dominated iff
// some point is >= in both coordinates and differs in at least one.
inline std::vector<bool> brute_force_front(const std::vector<ParetoPoint>& points) {
  std::vector<bool> front(points.size(), true);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) {
        continue;
      }
      const bool geq = points[j].x >= points[i].x && points[j].y >= points[i].y;
      const bool strict = points[j].x > points[i].x || points[j].y > points[i].y;
      if (geq && strict) {
        front[i] = false;
        break;
      }
    }
  }
  return front;
}

}  // namespace brg::testing

#endif  // BRG_TESTS_SUPPORT_ORACLES_HPP_
