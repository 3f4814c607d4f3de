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
// Command line front end: generate game files, run single solves, run
// solver batches, and render Pareto reports from batch results.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "brg/algorithms.hpp"
#include "brg/errors.hpp"
#include "brg/evaluation.hpp"
#include "brg/experiments.hpp"
#include "brg/serialization.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

// io-error=6, solve=5, validation/usage=4, parse=3, other=1
int exit_code_for(const brg::Error& e) {
  if (dynamic_cast<const brg::IoError*>(&e) != nullptr) return 6;
  if (dynamic_cast<const brg::SolveError*>(&e) != nullptr) return 5;
  if (dynamic_cast<const brg::ParseError*>(&e) != nullptr) return 3;
  if (dynamic_cast<const brg::ValidationError*>(&e) != nullptr) return 4;
  if (dynamic_cast<const brg::ShapeError*>(&e) != nullptr) return 4;
  if (dynamic_cast<const brg::IndexError*>(&e) != nullptr) return 4;
  return 1;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

// BRG_SEED overrides --seed wherever a seed flag exists.
void apply_seed_env(std::uint64_t& seed) {
  if (const char* env = std::getenv("BRG_SEED")) {
    seed = std::strtoull(env, nullptr, 10);
  }
}

struct GeneratorFlags {
  brg::GeneratorSpec spec;
  std::string xi_mode = "uniform";

  void attach(CLI::App* cmd) {
    cmd->add_option("--states", spec.num_states, "Number of states")->capture_default_str();
    cmd->add_option("--actions", spec.num_actions[0], "Actions per player (player 1, and player 2 unless --actions2 is given)")
        ->capture_default_str();
    cmd->add_option("--actions2", spec.num_actions[1],
                    "Actions of player 2 (defaults to --actions)");
    cmd->add_option("--types", spec.num_types, "Number of types K")->capture_default_str();
    cmd->add_option("--dirichlet-alpha", spec.dirichlet_alpha,
                    "Dirichlet concentration for transition rows")
        ->capture_default_str();
    cmd->add_option("--reward-mean", spec.reward_mean, "Reward mean")->capture_default_str();
    cmd->add_option("--reward-std", spec.reward_std, "Reward standard deviation")
        ->capture_default_str();
    cmd->add_option("--discount", spec.discount, "Discount factor in [0, 1)")
        ->capture_default_str();
    cmd->add_option("--xi-mode", xi_mode, "Type prior: uniform | dirichlet")
        ->check(CLI::IsMember({"uniform", "dirichlet"}))
        ->capture_default_str();
    cmd->add_option("--seed", spec.master_seed, "Master seed (env BRG_SEED overrides)")
        ->capture_default_str();
  }

  brg::GeneratorSpec finish(const CLI::App* cmd) {
    if (cmd->count("--actions") != 0 && cmd->count("--actions2") == 0) {
      spec.num_actions[1] = spec.num_actions[0];
    }
    spec.xi_mode = xi_mode == "dirichlet" ? brg::XiMode::kDirichlet : brg::XiMode::kUniform;
    apply_seed_env(spec.master_seed);
    return spec;
  }
};

struct SolverFlags {
  brg::SolverConfig cfg;
  int horizon = 50;

  void attach(CLI::App* cmd, const char* seed_flag = "--theta-seed") {
    cmd->add_option("--eta1", cfg.eta1, "Player 1 learning rate")->capture_default_str();
    cmd->add_option("--eta2", cfg.eta2, "Player 2 learning rate")->capture_default_str();
    cmd->add_option("--outer-iters", cfg.outer_iters, "Outer iteration cap")
        ->capture_default_str();
    cmd->add_option("--inner-iters", cfg.inner_iters, "Inner iteration cap")
        ->capture_default_str();
    cmd->add_option("--grad-tol", cfg.grad_tol, "Gradient-norm stopping tolerance")
        ->capture_default_str();
    cmd->add_option(seed_flag, cfg.seed,
                    "Theta init seed (0 = zero logits, otherwise Gaussian jitter)")
        ->capture_default_str();
    cmd->add_option("--horizon", horizon, "Backward-induction horizon (mmbi only)")
        ->capture_default_str();
  }
};

ordered_json generator_json(const brg::GeneratorSpec& spec) {
  return {{"num_states", spec.num_states},
          {"num_actions", {spec.num_actions[0], spec.num_actions[1]}},
          {"num_types", spec.num_types},
          {"dirichlet_alpha", spec.dirichlet_alpha},
          {"reward_mean", spec.reward_mean},
          {"reward_std", spec.reward_std},
          {"discount", spec.discount},
          {"xi_mode", spec.xi_mode == brg::XiMode::kDirichlet ? "dirichlet" : "uniform"},
          {"master_seed", spec.master_seed}};
}

ordered_json solver_config_json(const brg::SolverConfig& cfg, int horizon) {
  return {{"eta1", cfg.eta1},
          {"eta2", cfg.eta2},
          {"risk", cfg.risk.name()},
          {"outer_iters", cfg.outer_iters},
          {"inner_iters", cfg.inner_iters},
          {"grad_tol", cfg.grad_tol},
          {"seed", cfg.seed},
          {"horizon", horizon}};
}

void write_manifest(const fs::path& path, const std::string& command, ordered_json config,
                    const std::vector<std::string>& artifacts,
                    std::chrono::steady_clock::time_point started) {
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  ordered_json manifest;
  manifest["tool"] = "brg";
  manifest["tool_version"] = kToolVersion;
  manifest["command"] = command;
  manifest["config"] = std::move(config);
  manifest["artifacts"] = artifacts;
  manifest["timestamp_utc"] = utc_timestamp();
  manifest["duration_ms"] = elapsed.count();
  brg::write_text_file(path, manifest.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// generate

int cmd_generate(GeneratorFlags& flags, int games, const std::string& out_dir,
                 const CLI::App* cmd) {
  const auto started = std::chrono::steady_clock::now();
  const brg::GeneratorSpec spec = flags.finish(cmd);
  fs::create_directories(out_dir);
  std::vector<std::string> artifacts;
  for (int i = 0; i < games; ++i) {
    const brg::Game game = brg::generate_game(spec, static_cast<std::uint64_t>(i));
    char name[32];
    std::snprintf(name, sizeof(name), "game_%04d.json", i);
    const fs::path path = fs::path(out_dir) / name;
    brg::save_game(game, path);
    artifacts.push_back(name);
  }
  ordered_json config;
  config["generator"] = generator_json(spec);
  config["games"] = games;
  write_manifest(fs::path(out_dir) / "manifest.json", "generate", std::move(config), artifacts,
                 started);
  std::cout << "wrote " << games << " game(s) to " << out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// solve

int cmd_solve(const std::string& game_path, const std::string& solver, bool risk_neutral,
              std::optional<double> cvar_alpha, SolverFlags& flags, double metric_alpha,
              const std::string& out_file) {
  (void)risk_neutral;  // default; --cvar switches
  brg::SolverConfig cfg = flags.cfg;
  apply_seed_env(cfg.seed);
  cfg.risk = cvar_alpha.has_value() ? brg::RiskMeasure::cvar(*cvar_alpha)
                                    : brg::RiskMeasure::expectation();

  const brg::Game game = brg::load_game(game_path);
  const brg::SolverKind kind = brg::parse_solver(solver);
  const brg::SolveResult result = brg::run_solver(kind, game, cfg, flags.horizon);

  // Exact evaluation of the final parameters.
  const brg::UtilityMatrix um = brg::utility_matrix(game, result.theta);
  brg::PerGameRecord metrics;
  metrics.solver = solver;
  std::tie(metrics.u1, metrics.u2) = brg::expected_utility(um, game.type_prior);
  metrics.sw = 0.5 * (metrics.u1 + metrics.u2);
  metrics.cvar_u1 = brg::cvar(brg::dist_from_matrix(um.u1, game.type_prior), metric_alpha);
  metrics.cvar_u2 = brg::cvar(brg::dist_from_matrix(um.u2, game.type_prior), metric_alpha);
  const Eigen::MatrixXd welfare = 0.5 * (um.u1 + um.u2);
  metrics.cvar_sw = brg::cvar(brg::dist_from_matrix(welfare, game.type_prior), metric_alpha);
  metrics.iterations = result.iterations_used;
  metrics.converged = result.converged;

  const std::string json = brg::solve_result_to_json(result, solver, cfg.risk, metrics);
  if (out_file == "-") {
    std::cout << json;
  } else {
    brg::write_text_file(out_file, json);
    std::cout << "wrote " << out_file << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// batch

std::vector<brg::SolverSpec> parse_solver_list(const std::string& csv, double alpha) {
  std::vector<brg::SolverSpec> specs;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string token =
        csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!token.empty()) {
      brg::SolverSpec spec;
      std::string base = token;
      if (token.rfind("rs-", 0) == 0) {
        base = token.substr(3);
        spec.risk = brg::RiskMeasure::cvar(alpha);
        spec.label = "RS-";
      } else {
        spec.risk = brg::RiskMeasure::expectation();
      }
      spec.kind = brg::parse_solver(base);
      std::string upper = base;
      for (char& c : upper) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      }
      spec.label += upper;
      specs.push_back(std::move(spec));
    }
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  return specs;
}

int cmd_batch(GeneratorFlags& gen_flags, SolverFlags& solver_flags, int games, double alpha,
              const std::string& solvers_csv, int jobs, const std::string& out_dir,
              const CLI::App* cmd) {
  const auto started = std::chrono::steady_clock::now();
  const brg::GeneratorSpec spec = gen_flags.finish(cmd);
  const std::vector<brg::SolverSpec> solvers = parse_solver_list(solvers_csv, alpha);

  const brg::BatchResult batch = brg::run_batch(spec, solvers, solver_flags.cfg, games, alpha,
                                                jobs, solver_flags.horizon);

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  brg::write_text_file(dir / "per_game.csv", brg::per_game_csv(batch.records));
  brg::write_text_file(dir / "social_welfare.csv",
                       brg::metric_table_csv(batch.rows, brg::TableKind::kSocialWelfare));
  brg::write_text_file(dir / "social_welfare.json",
                       brg::metric_table_json(batch.rows, brg::TableKind::kSocialWelfare));
  brg::write_text_file(dir / "general.csv",
                       brg::metric_table_csv(batch.rows, brg::TableKind::kGeneral));
  brg::write_text_file(dir / "general.json",
                       brg::metric_table_json(batch.rows, brg::TableKind::kGeneral));

  ordered_json config;
  config["generator"] = generator_json(spec);
  config["solver_config"] = solver_config_json(solver_flags.cfg, solver_flags.horizon);
  config["solvers"] = solvers_csv;
  config["games"] = games;
  config["alpha"] = alpha;
  config["jobs"] = jobs;
  config["failures"] = batch.failures.size();
  write_manifest(dir / "manifest.json", "batch", std::move(config),
                 {"per_game.csv", "social_welfare.csv", "social_welfare.json", "general.csv",
                  "general.json"},
                 started);

  std::cout << brg::metric_table_csv(batch.rows, brg::TableKind::kSocialWelfare);
  if (!batch.failures.empty()) {
    std::cerr << batch.failures.size() << " solver run(s) failed and were excluded:\n";
    for (const brg::CellFailure& f : batch.failures) {
      std::cerr << "  game " << f.game_index << " " << f.solver << ": " << f.message << "\n";
    }
  }
  std::cout << "wrote batch outputs to " << out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// pareto

int cmd_pareto(const std::string& input_csv, const std::string& x_col, const std::string& y_col,
               const std::string& out_csv, const std::string& out_svg) {
  const brg::CsvTable table = brg::read_csv(input_csv);
  const std::size_t solver_col = table.column("solver");
  const std::size_t xi = table.column(x_col);
  const std::size_t yi = table.column(y_col);

  // Per-solver means in first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, std::pair<double, double>> sums;
  std::map<std::string, int> counts;
  for (const auto& row : table.rows) {
    const std::string& solver = row[solver_col];
    if (counts.find(solver) == counts.end()) {
      order.push_back(solver);
    }
    sums[solver].first += std::stod(row[xi]);
    sums[solver].second += std::stod(row[yi]);
    counts[solver] += 1;
  }

  const std::string space = "mean(" + x_col + ") vs mean(" + y_col + ")";
  std::vector<brg::ParetoPoint> points;
  for (const std::string& solver : order) {
    points.push_back({solver, sums[solver].first / counts[solver],
                      sums[solver].second / counts[solver], space});
  }
  const std::vector<bool> front = brg::pareto_front(points);

  brg::write_text_file(out_csv, brg::pareto_csv(points, front));
  brg::write_text_file(out_svg,
                       brg::pareto_svg(points, front, "mean " + x_col, "mean " + y_col));
  std::cout << "wrote " << out_csv << " and " << out_svg << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact evaluation and risk-sensitive policy optimization for two-player "
               "Bayesian stochastic games"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "Write random game files");
  GeneratorFlags gen_flags;
  int gen_games = 1;
  std::string gen_out = ".";
  generate->add_option("--games", gen_games, "Number of games")->capture_default_str();
  gen_flags.attach(generate);
  generate->add_option("--out", gen_out, "Output directory")->capture_default_str();

  // solve
  auto* solve = app.add_subcommand("solve", "Run one solver on a game file");
  std::string solve_game;
  std::string solve_solver = "dapg";
  bool solve_rn = false;
  std::optional<double> solve_cvar;
  double solve_metric_alpha = 0.25;
  std::string solve_out = "result.json";
  SolverFlags solve_flags;
  solve->add_option("game", solve_game, "Game JSON file (bayes-game-v1)")->required();
  solve->add_option("--solver", solve_solver, "mmbi | ibr | fp | dapg")->capture_default_str();
  auto* rn_flag = solve->add_flag("--risk-neutral", solve_rn, "Optimize the expectation (default)");
  solve->add_option("--cvar", solve_cvar, "Optimize CVaR at this alpha")->excludes(rn_flag);
  solve_flags.attach(solve, "--seed");
  solve->add_option("--metric-alpha", solve_metric_alpha, "Alpha for reported CVaR metrics")
      ->capture_default_str();
  solve->add_option("--out", solve_out, "Output JSON file ('-' for stdout)")
      ->capture_default_str();

  // batch
  auto* batch = app.add_subcommand("batch", "Run a solver batch over random games");
  GeneratorFlags batch_gen_flags;
  SolverFlags batch_solver_flags;
  int batch_games = 100;
  double batch_alpha = 0.25;
  std::string batch_solvers = "mmbi,ibr,fp,dapg,rs-mmbi,rs-ibr,rs-fp,rs-dapg";
  int batch_jobs = 1;
  std::string batch_out = "batch_out";
  batch->add_option("--games", batch_games, "Number of games")->capture_default_str();
  batch->add_option("--alpha", batch_alpha, "CVaR level for metrics and RS objectives")
      ->capture_default_str();
  batch_gen_flags.attach(batch);
  batch_solver_flags.attach(batch);
  batch->add_option("--solvers", batch_solvers, "Comma-separated solver list")
      ->capture_default_str();
  batch->add_option("--jobs", batch_jobs, "Parallel solver runs")->capture_default_str();
  batch->add_option("--out", batch_out, "Output directory")->capture_default_str();

  // pareto
  auto* pareto = app.add_subcommand("pareto", "Pareto front of per-solver means");
  std::string pareto_input;
  std::string pareto_x = "U1";
  std::string pareto_y = "U2";
  std::string pareto_out_csv = "pareto.csv";
  std::string pareto_out_svg = "pareto.svg";
  pareto->add_option("input", pareto_input, "per_game.csv from a batch run")->required();
  pareto->add_option("--x", pareto_x, "X objective column")->capture_default_str();
  pareto->add_option("--y", pareto_y, "Y objective column")->capture_default_str();
  pareto->add_option("--out-csv", pareto_out_csv, "Output CSV")->capture_default_str();
  pareto->add_option("--out-svg", pareto_out_svg, "Output SVG")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      return cmd_generate(gen_flags, gen_games, gen_out, generate);
    }
    if (solve->parsed()) {
      return cmd_solve(solve_game, solve_solver, solve_rn, solve_cvar, solve_flags,
                       solve_metric_alpha, solve_out);
    }
    if (batch->parsed()) {
      return cmd_batch(batch_gen_flags, batch_solver_flags, batch_games, batch_alpha,
                       batch_solvers, batch_jobs, batch_out, batch);
    }
    if (pareto->parsed()) {
      return cmd_pareto(pareto_input, pareto_x, pareto_y, pareto_out_csv, pareto_out_svg);
    }
  } catch (const brg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
