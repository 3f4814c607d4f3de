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

#ifndef BRG_SERIALIZATION_HPP_
#define BRG_SERIALIZATION_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "brg/algorithms.hpp"
#include "brg/experiments.hpp"
#include "brg/game.hpp"

namespace brg {

inline constexpr const char* kGameFormatVersion = "bayes-game-v1";

// Shortest round-trippable decimal representation; identical input bits
// always produce identical bytes.
std::string format_double(double value);

// Self-describing JSON document with an explicit dimension header and
// row-major nested arrays (version tag "bayes-game-v1"). The result of
// game_from_json always passes validate_game.
std::string game_to_json(const Game& g);
Game game_from_json(const std::string& text);

Game load_game(const std::filesystem::path& path);
void save_game(const Game& g, const std::filesystem::path& path);

std::string solve_result_to_json(const SolveResult& result, const std::string& solver,
                                 const RiskMeasure& rm, const PerGameRecord& metrics);

// Per-game records: header
// game_index,solver,U1,U2,SW,CVaR_U1,CVaR_U2,CVaR_SW,iterations,converged
std::string per_game_csv(std::span<const PerGameRecord> records);

enum class TableKind { kSocialWelfare, kGeneral };

std::string metric_table_csv(std::span<const MetricRow> rows, TableKind kind);
std::string metric_table_json(std::span<const MetricRow> rows, TableKind kind);

std::string pareto_csv(std::span<const ParetoPoint> points, const std::vector<bool>& on_front);

// Minimal CSV reader for our own outputs (no quoting or embedded commas).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by header name; throws Error("missing-columns: ...").
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace brg

#endif  // BRG_SERIALIZATION_HPP_
