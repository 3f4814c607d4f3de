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

#include <cstdio>
#include <filesystem>

#include "brg/experiments.hpp"
#include "brg/serialization.hpp"

using namespace brg;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("brg_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("games round-trip through JSON bit for bit") {
  GeneratorSpec spec;
  spec.master_seed = 60;
  spec.num_actions = {2, 3};
  spec.xi_mode = XiMode::kDirichlet;
  const Game g = generate_game(spec, 4);
  const std::string text = game_to_json(g);
  const Game back = game_from_json(text);
  CHECK(back.num_states == g.num_states);
  CHECK(back.num_actions == g.num_actions);
  CHECK(back.num_types == g.num_types);
  CHECK(back.discount == g.discount);
  CHECK(back.rewards == g.rewards);
  CHECK(back.transition == g.transition);
  CHECK(back.type_prior == g.type_prior);
  CHECK(back.initial_state_dist == g.initial_state_dist);
  // And serialising again yields identical bytes.
  CHECK(game_to_json(back) == text);
}

TEST_CASE("the version tag is required") {
  GeneratorSpec spec;
  const std::string text = game_to_json(generate_game(spec, 0));
  std::string wrong = text;
  const auto pos = wrong.find("bayes-game-v1");
  wrong.replace(pos, 13, "bayes-game-v9");
  CHECK_THROWS_AS(game_from_json(wrong), ParseError);
}

TEST_CASE("missing fields are reported by name") {
  try {
    game_from_json("{\"version\": \"bayes-game-v1\", \"num_states\": 1}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("num_actions") != std::string::npos);
  }
}

TEST_CASE("malformed JSON reports the offending line") {
  const std::string broken = "{\n  \"version\": \"bayes-game-v1\",\n  \"num_states\": oops\n}";
  try {
    game_from_json(broken);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("tensor extents are checked during parsing") {
  GeneratorSpec spec;
  const Game g = generate_game(spec, 0);
  std::string text = game_to_json(g);
  // Claim one more state than the arrays carry.
  const auto pos = text.find("\"num_states\": 3");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 15, "\"num_states\": 4");
  try {
    game_from_json(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("rewards") != std::string::npos);
  }
}

TEST_CASE("parsed games re-validate") {
  GeneratorSpec spec;
  const Game g = generate_game(spec, 0);
  std::string text = game_to_json(g);
  const auto pos = text.find("\"discount\": 0.9");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 15, "\"discount\": 1.5");
  CHECK_THROWS_AS(game_from_json(text), ValidationError);
}

TEST_CASE("format_double keeps shortest round-trip forms") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-7) == "-2.5e-07");
  const double pi_ish = 3.141592653589793;
  CHECK(std::stod(format_double(pi_ish)) == pi_ish);
}

TEST_CASE("per-game CSV has the documented header and row format") {
  std::vector<PerGameRecord> records(2);
  records[0] = {0, "IBR", 1.5, -0.25, 0.625, -1.0, -2.0, -1.5, 17, true};
  records[1] = {1, "RS-DAPG", 0.5, 0.5, 0.5, 0.0, 0.0, 0.0, 3, false};
  const std::string csv = per_game_csv(records);
  CHECK(csv.rfind("game_index,solver,U1,U2,SW,CVaR_U1,CVaR_U2,CVaR_SW,iterations,converged\n",
                  0) == 0);
  CHECK(csv.find("0,IBR,1.5,-0.25,0.625,-1,-2,-1.5,17,1\n") != std::string::npos);
  CHECK(csv.find("1,RS-DAPG,0.5,0.5,0.5,0,0,0,3,0\n") != std::string::npos);
}

TEST_CASE("metric tables select the right columns") {
  MetricRow row;
  row.algorithm = "FP";
  row.social_welfare = {1.0, 0.5};
  row.cvar_social_welfare = {-1.0, 0.25};
  row.u1 = {2.0, 0.1};
  row.u2 = {3.0, 0.2};
  row.cvar_u1 = {-2.0, 0.3};
  row.cvar_u2 = {-3.0, 0.4};
  row.games_used = 7;
  const std::vector<MetricRow> rows = {row};

  const std::string social = metric_table_csv(rows, TableKind::kSocialWelfare);
  CHECK(social.find("SW_mean") != std::string::npos);
  CHECK(social.find("CVaR_SW_mean") != std::string::npos);
  CHECK(social.find("U1_mean") == std::string::npos);

  const std::string general = metric_table_csv(rows, TableKind::kGeneral);
  CHECK(general.find("U1_mean") != std::string::npos);
  CHECK(general.find("CVaR_U2_std") != std::string::npos);
  CHECK(general.find("SW_mean") == std::string::npos);

  const std::string json = metric_table_json(rows, TableKind::kGeneral);
  CHECK(json.find("\"algorithm\": \"FP\"") != std::string::npos);
  CHECK(json.find("\"U1\"") != std::string::npos);
}

TEST_CASE("solve_result_to_json embeds trace, theta, and metrics") {
  GeneratorSpec spec;
  spec.master_seed = 61;
  const Game g = generate_game(spec, 0);
  SolverConfig cfg;
  cfg.outer_iters = 3;
  cfg.inner_iters = 2;
  const SolveResult result = solve_dapg(g, cfg);
  PerGameRecord metrics;
  metrics.u1 = 1.0;
  const std::string json =
      solve_result_to_json(result, "dapg", RiskMeasure::cvar(0.25), metrics);
  CHECK(json.find("\"solver\": \"dapg\"") != std::string::npos);
  CHECK(json.find("\"risk\": \"cvar(0.25)\"") != std::string::npos);
  CHECK(json.find("\"trace\"") != std::string::npos);
  CHECK(json.find("\"theta\"") != std::string::npos);
}

TEST_CASE("csv files read back with column lookup") {
  TempDir tmp;
  const fs::path path = tmp.path / "table.csv";
  write_text_file(path, "solver,U1,U2\nIBR,1.5,2\nFP,-1,0.25\n");
  const CsvTable table = read_csv(path);
  REQUIRE(table.header.size() == 3);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.column("U2") == 2);
  CHECK(table.rows[1][table.column("solver")] == "FP");
  CHECK_THROWS_WITH_AS(table.column("CVaR_U1"),
                       "missing-columns: no column named 'CVaR_U1'", Error);
}

TEST_CASE("missing files raise io errors") {
  CHECK_THROWS_AS(load_game("/nonexistent/game.json"), IoError);
  CHECK_THROWS_AS(read_text_file("/nonexistent/file.txt"), IoError);
}

TEST_CASE("save and load round trip on disk") {
  TempDir tmp;
  GeneratorSpec spec;
  spec.master_seed = 62;
  const Game g = generate_game(spec, 1);
  const fs::path path = tmp.path / "game.json";
  save_game(g, path);
  const Game back = load_game(path);
  CHECK(back.rewards == g.rewards);
}
