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

#include <algorithm>
#include <cmath>

#include "brg/experiments.hpp"
#include "brg/rng.hpp"
#include "support/oracles.hpp"

using namespace brg;

namespace {

SolverConfig fast_cfg() {
  SolverConfig cfg;
  cfg.outer_iters = 10;
  cfg.inner_iters = 5;
  return cfg;
}

std::vector<ParetoPoint> make_points(const std::vector<std::pair<double, double>>& xy) {
  std::vector<ParetoPoint> points;
  for (std::size_t i = 0; i < xy.size(); ++i) {
    points.push_back({"p" + std::to_string(i), xy[i].first, xy[i].second, "test"});
  }
  return points;
}

}  // namespace

TEST_CASE("one-state generation yields the trivial transition") {
  GeneratorSpec spec;
  spec.num_states = 1;
  spec.master_seed = 3;
  const Game g = generate_game(spec, 5);
  for (double p : g.transition) {
    CHECK(p == 1.0);
  }
}

TEST_CASE("generation is a pure function of (seed, index)") {
  GeneratorSpec spec;
  spec.master_seed = 42;
  spec.xi_mode = XiMode::kDirichlet;
  const Game a = generate_game(spec, 17);
  const Game b = generate_game(spec, 17);
  CHECK(a.transition == b.transition);
  CHECK(a.rewards == b.rewards);
  CHECK(a.type_prior == b.type_prior);

  const Game c = generate_game(spec, 18);
  CHECK(a.rewards != c.rewards);
}

TEST_CASE("drawing order is independent across indices") {
  // Generating game 7 directly equals generating it after games 0..6.
  GeneratorSpec spec;
  spec.master_seed = 8;
  for (std::uint64_t i = 0; i < 7; ++i) {
    (void)generate_game(spec, i);
  }
  const Game direct = generate_game(spec, 7);
  const Game again = generate_game(spec, 7);
  CHECK(direct.rewards == again.rewards);
}

TEST_CASE("reward sampler matches its nominal moments over 10000 draws") {
  GeneratorSpec spec;
  spec.num_states = 10;
  spec.num_actions = {10, 10};
  spec.num_types = 5;
  spec.master_seed = 12345;
  const Game g = generate_game(spec, 0);
  REQUIRE(g.rewards.size() == 10000);
  double mean = 0.0;
  for (double r : g.rewards) {
    mean += r;
  }
  mean /= g.rewards.size();
  double var = 0.0;
  for (double r : g.rewards) {
    var += (r - mean) * (r - mean);
  }
  var /= g.rewards.size();
  CHECK(std::abs(mean - 0.0) < 0.05);
  CHECK(std::abs(std::sqrt(var) - 1.0) < 0.05);
}

TEST_CASE("every generated game passes validation") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GeneratorSpec spec;
    spec.master_seed = seed;
    spec.num_states = 1 + static_cast<int>(seed % 4);
    spec.num_actions = {2, 3};
    spec.num_types = 1 + static_cast<int>(seed % 3);
    spec.xi_mode = seed % 2 == 0 ? XiMode::kUniform : XiMode::kDirichlet;
    for (std::uint64_t index = 0; index < 10; ++index) {
      CHECK_NOTHROW(validate_game(generate_game(spec, index)));
    }
  }
}

TEST_CASE("generator rejects invalid specs") {
  GeneratorSpec spec;
  spec.num_states = 0;
  CHECK_THROWS_AS(generate_game(spec, 0), ValidationError);
  spec = GeneratorSpec{};
  spec.dirichlet_alpha = 0.0;
  CHECK_THROWS_AS(generate_game(spec, 0), ValidationError);
  spec = GeneratorSpec{};
  spec.discount = 1.0;
  CHECK_THROWS_AS(generate_game(spec, 0), ValidationError);
}

TEST_CASE("default solver set has the eight table rows") {
  const auto solvers = default_solver_set(0.25);
  REQUIRE(solvers.size() == 8);
  CHECK(solvers[0].label == "MMBI");
  CHECK(solvers[3].label == "DAPG");
  CHECK(solvers[4].label == "RS-MMBI");
  CHECK(solvers[7].label == "RS-DAPG");
  CHECK_FALSE(solvers[1].risk.is_cvar());
  CHECK(solvers[5].risk.is_cvar());
}

TEST_CASE("single-game batches have zero standard deviation") {
  GeneratorSpec spec;
  spec.master_seed = 50;
  const auto solvers = default_solver_set(0.25);
  const BatchResult batch = run_batch(spec, solvers, fast_cfg(), 1, 0.25);
  REQUIRE(batch.rows.size() == 8);
  for (const MetricRow& row : batch.rows) {
    CHECK(row.social_welfare.stddev == 0.0);
    CHECK(row.u1.stddev == 0.0);
    CHECK(row.games_used == 1);
    CHECK(row.failures == 0);
  }
}

TEST_CASE("social welfare is the average of the player utilities") {
  GeneratorSpec spec;
  spec.master_seed = 51;
  const auto solvers = default_solver_set(0.25);
  const BatchResult batch = run_batch(spec, solvers, fast_cfg(), 3, 0.25);
  REQUIRE(batch.records.size() == 3 * 8);
  for (const PerGameRecord& rec : batch.records) {
    CHECK(std::abs(rec.sw - 0.5 * (rec.u1 + rec.u2)) < 1e-12);
    // Lower-tail CVaR of the welfare atoms never exceeds the mean welfare.
    CHECK(rec.cvar_sw <= rec.sw + 1e-12);
  }
}

TEST_CASE("the game sequence does not depend on the solver set") {
  GeneratorSpec spec;
  spec.master_seed = 52;
  const std::vector<SolverSpec> just_ibr = {{"IBR", SolverKind::kIbr,
                                             RiskMeasure::expectation()}};
  const std::vector<SolverSpec> both = {
      {"IBR", SolverKind::kIbr, RiskMeasure::expectation()},
      {"DAPG", SolverKind::kDapg, RiskMeasure::expectation()}};
  const BatchResult a = run_batch(spec, just_ibr, fast_cfg(), 4, 0.25);
  const BatchResult b = run_batch(spec, both, fast_cfg(), 4, 0.25);
  REQUIRE(a.records.size() == 4);
  REQUIRE(b.records.size() == 8);
  for (int game = 0; game < 4; ++game) {
    CHECK(a.records[game].u1 == b.records[game * 2].u1);
    CHECK(a.records[game].u2 == b.records[game * 2].u2);
  }
}

TEST_CASE("parallel batches equal serial batches") {
  GeneratorSpec spec;
  spec.master_seed = 53;
  const auto solvers = default_solver_set(0.25);
  const BatchResult serial = run_batch(spec, solvers, fast_cfg(), 3, 0.25, 1);
  const BatchResult parallel = run_batch(spec, solvers, fast_cfg(), 3, 0.25, 4);
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].u1 == parallel.records[i].u1);
    CHECK(serial.records[i].cvar_sw == parallel.records[i].cvar_sw);
    CHECK(serial.records[i].solver == parallel.records[i].solver);
  }
}

TEST_CASE("pareto front of the documented example") {
  const auto points = make_points({{1.0, 1.0}, {2.0, 0.0}, {0.0, 2.0}, {0.5, 0.5}});
  const auto front = pareto_front(points);
  CHECK(front == std::vector<bool>{true, true, true, false});
}

TEST_CASE("a single point is its own front") {
  const auto points = make_points({{3.0, -2.0}});
  CHECK(pareto_front(points) == std::vector<bool>{true});
}

TEST_CASE("duplicate coordinates are front members together") {
  const auto points = make_points({{1.0, 1.0}, {1.0, 1.0}, {0.5, 0.5}});
  CHECK(pareto_front(points) == std::vector<bool>{true, true, false});
}

TEST_CASE("pareto front matches brute force on random point sets") {
  Rng rng(54);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<ParetoPoint> points;
    const int n = 3 + static_cast<int>(rng.next_u64() % 198);
    for (int i = 0; i < n; ++i) {
      // Coarse grid so that ties and duplicates actually occur.
      const double x = std::floor(rng.next_double() * 10.0);
      const double y = std::floor(rng.next_double() * 10.0);
      points.push_back({"p", x, y, "grid"});
    }
    CHECK(pareto_front(points) == testing::brute_force_front(points));
  }
}

TEST_CASE("pareto front is invariant under reordering") {
  Rng rng(55);
  std::vector<ParetoPoint> points;
  for (int i = 0; i < 64; ++i) {
    points.push_back({"p" + std::to_string(i), rng.normal(), rng.normal(), "space"});
  }
  const auto front = pareto_front(points);

  std::vector<std::size_t> perm(points.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.next_u64() % i]);
  }
  std::vector<ParetoPoint> shuffled;
  for (std::size_t i : perm) {
    shuffled.push_back(points[i]);
  }
  const auto shuffled_front = pareto_front(shuffled);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    CHECK(shuffled_front[i] == front[perm[i]]);
  }
}

TEST_CASE("mixed objective spaces are rejected") {
  std::vector<ParetoPoint> points = {{"a", 0.0, 0.0, "u1/u2"}, {"b", 1.0, 1.0, "cvar"}};
  CHECK_THROWS_AS(pareto_front(points), ValidationError);
}

TEST_CASE("pareto svg is standalone XML with one marker per point") {
  const auto points = make_points({{1.0, 1.0}, {2.0, 0.0}, {0.0, 2.0}, {0.5, 0.5}});
  const auto front = pareto_front(points);
  const std::string svg = pareto_svg(points, front, "U1", "U2");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  std::size_t circles = 0;
  for (std::size_t pos = svg.find("<circle"); pos != std::string::npos;
       pos = svg.find("<circle", pos + 1)) {
    ++circles;
  }
  CHECK(circles == points.size());
}
