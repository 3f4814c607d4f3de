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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <string>

#include "brg/game.hpp"
#include "brg/rng.hpp"

using namespace brg;

namespace {

// 1-state, 1-action, 1-type game.
Game degenerate_game() {
  Game g;
  g.num_states = 1;
  g.num_actions = {1, 1};
  g.num_types = 1;
  g.rewards = {0.5, -0.25};
  g.transition = {1.0};
  g.type_prior = {1.0};
  g.discount = 0.9;
  g.initial_state_dist = {1.0};
  return g;
}

std::string error_message(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("validate_game accepts a degenerate valid game") {
  CHECK_NOTHROW(validate_game(degenerate_game()));
}

TEST_CASE("validate_game rejects a non-stochastic transition row") {
  Game g = degenerate_game();
  g.transition = {0.5};
  const std::string msg = error_message([&] { validate_game(g); });
  CHECK(msg.find("non-stochastic-row") != std::string::npos);
  CHECK(msg.find("s=0") != std::string::npos);
}

TEST_CASE("validate_game rejects discount 1.0") {
  Game g = degenerate_game();
  g.discount = 1.0;
  const std::string msg = error_message([&] { validate_game(g); });
  CHECK(msg.find("invalid-discount") != std::string::npos);
}

TEST_CASE("validate_game rejects inconsistent tensor sizes") {
  Game g = degenerate_game();
  g.rewards.push_back(1.0);
  const std::string msg = error_message([&] { validate_game(g); });
  CHECK(msg.find("dimension-mismatch") != std::string::npos);
}

TEST_CASE("validate_game rejects a bad prior") {
  Game g = degenerate_game();
  g.type_prior = {0.9};
  CHECK_THROWS_AS(validate_game(g), ValidationError);
}

TEST_CASE("softmax of zero logits is uniform") {
  PolicyParams theta(1, 1, {3, 2});
  const auto pi = softmax_policy(theta, 0, 0, 0);
  REQUIRE(pi.size() == 3);
  for (double p : pi) {
    CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("softmax is invariant to a common shift") {
  PolicyParams theta(1, 1, {2, 2});
  theta.at(0, 0, 0, 0) = 17.25;
  theta.at(0, 0, 0, 1) = 17.25;
  const auto pi = softmax_policy(theta, 0, 0, 0);
  CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-15));

  // Random row vs the same row plus a constant.
  Rng rng(21);
  PolicyParams a(2, 3, {4, 2});
  for (double& x : a.flat()) {
    x = rng.normal(0.0, 2.0);
  }
  PolicyParams b = a;
  for (double& x : b.row(0, 1, 2)) {
    x += 123.456;
  }
  const auto pa = softmax_policy(a, 0, 1, 2);
  const auto pb = softmax_policy(b, 0, 1, 2);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i] == doctest::Approx(pb[i]).epsilon(1e-12));
  }
}

TEST_CASE("softmax of ln(2) vs 0 is (2/3, 1/3)") {
  PolicyParams theta(1, 1, {2, 2});
  theta.at(0, 0, 0, 0) = std::log(2.0);
  const auto pi = softmax_policy(theta, 0, 0, 0);
  CHECK(pi[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(pi[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("softmax survives huge logits without NaN") {
  PolicyParams theta(1, 1, {3, 2});
  theta.at(0, 0, 0, 0) = 1e4;
  theta.at(0, 0, 0, 1) = -1e4;
  theta.at(0, 0, 0, 2) = 0.0;
  const auto pi = softmax_policy(theta, 0, 0, 0);
  double sum = 0.0;
  for (double p : pi) {
    CHECK(std::isfinite(p));
    sum += p;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pi[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("softmax rejects out-of-range indices") {
  PolicyParams theta(1, 2, {2, 2});
  CHECK_THROWS_AS(softmax_policy(theta, 0, 1, 0), IndexError);
  CHECK_THROWS_AS(softmax_policy(theta, 2, 0, 0), IndexError);
  CHECK_THROWS_AS(softmax_policy(theta, 0, 0, 2), IndexError);
}

TEST_CASE("FPAverage of a single push is the pushed value") {
  FPAverage avg;
  const std::vector<double> x = {1.5, -2.0};
  avg.push(x);
  CHECK(avg.count() == 1);
  CHECK(avg.mean()[0] == 1.5);
  CHECK(avg.mean()[1] == -2.0);
}

TEST_CASE("FPAverage of 0 then 2 is 1") {
  FPAverage avg;
  avg.push(std::vector<double>{0.0});
  avg.push(std::vector<double>{2.0});
  CHECK(avg.count() == 2);
  CHECK(avg.mean()[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("FPAverage matches the direct mean of five tensors") {
  Rng rng(5);
  FPAverage avg;
  std::vector<double> direct(4, 0.0);
  for (int i = 0; i < 5; ++i) {
    std::vector<double> x(4);
    for (double& v : x) {
      v = rng.normal(0.0, 3.0);
    }
    avg.push(x);
    for (std::size_t d = 0; d < x.size(); ++d) {
      direct[d] += x[d];
    }
  }
  for (std::size_t d = 0; d < direct.size(); ++d) {
    CHECK(avg.mean()[d] == doctest::Approx(direct[d] / 5.0).epsilon(1e-12));
  }
}

TEST_CASE("FPAverage stays within 1e-10 of the direct mean for 1000 pushes") {
  Rng rng(1000);
  FPAverage avg;
  std::vector<double> sum(6, 0.0);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x(6);
    for (double& v : x) {
      v = rng.normal(0.0, 1.0);
    }
    avg.push(x);
    for (std::size_t d = 0; d < x.size(); ++d) {
      sum[d] += x[d];
    }
    for (std::size_t d = 0; d < sum.size(); ++d) {
      CHECK(std::abs(avg.mean()[d] - sum[d] / (i + 1)) < 1e-10);
    }
  }
}

TEST_CASE("FPAverage rejects mismatched shapes") {
  FPAverage avg;
  avg.push(std::vector<double>{1.0, 2.0});
  CHECK_THROWS_AS(avg.push(std::vector<double>{1.0}), ShapeError);
}

TEST_CASE("PolicyParams zero init and seeded jitter") {
  Game g = degenerate_game();
  const PolicyParams zeros = PolicyParams::initial(g, 0);
  for (double x : zeros.flat()) {
    CHECK(x == 0.0);
  }
  const PolicyParams jitter1 = PolicyParams::initial(g, 42);
  const PolicyParams jitter2 = PolicyParams::initial(g, 42);
  CHECK(jitter1.flat()[0] == jitter2.flat()[0]);
  CHECK(jitter1.flat()[0] != 0.0);
}

TEST_CASE("PolicyParams index checking") {
  PolicyParams theta(2, 3, {2, 4});
  CHECK(theta.size() == 2u * 3u * 2u + 2u * 3u * 4u);
  CHECK_THROWS_AS(theta.at(0, 0, 0, 2), IndexError);
  CHECK_NOTHROW(theta.at(1, 0, 0, 3));
  CHECK_THROWS_AS(theta.at(1, 2, 0, 0), IndexError);
}
