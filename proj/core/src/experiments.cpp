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

#include "brg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "brg/evaluation.hpp"
#include "brg/rng.hpp"

namespace brg {

void validate_spec(const GeneratorSpec& spec) {
  if (spec.num_states <= 0 || spec.num_actions[0] <= 0 || spec.num_actions[1] <= 0 ||
      spec.num_types <= 0) {
    throw ValidationError("invalid-spec: dimensions must be positive");
  }
  if (!(spec.dirichlet_alpha > 0.0) || !(spec.reward_std > 0.0)) {
    throw ValidationError("invalid-spec: concentration and reward std must be positive");
  }
  if (!(spec.discount >= 0.0) || !(spec.discount < 1.0)) {
    throw ValidationError("invalid-spec: discount must lie in [0, 1)");
  }
}

Game generate_game(const GeneratorSpec& spec, std::uint64_t index) {
  validate_spec(spec);
  Rng rng = Rng::substream(spec.master_seed, index);

  Game g;
  g.num_states = spec.num_states;
  g.num_actions = spec.num_actions;
  g.num_types = spec.num_types;
  g.discount = spec.discount;

  const std::size_t s = spec.num_states;
  const std::size_t a1 = spec.num_actions[0];
  const std::size_t a2 = spec.num_actions[1];
  const std::size_t k = spec.num_types;

  // Draw order is part of the determinism contract: transition rows first,
  // then rewards, then the prior.
  g.transition.resize(s * a1 * a2 * s);
  for (std::size_t row = 0; row < s * a1 * a2; ++row) {
    rng.dirichlet(spec.dirichlet_alpha, std::span<double>(g.transition).subspan(row * s, s));
  }

  g.rewards.resize(2 * k * s * a1 * a2);
  for (double& r : g.rewards) {
    r = rng.normal(spec.reward_mean, spec.reward_std);
  }

  g.type_prior.assign(k * k, 1.0 / static_cast<double>(k * k));
  if (spec.xi_mode == XiMode::kDirichlet) {
    rng.dirichlet(spec.dirichlet_alpha, g.type_prior);
  }

  g.initial_state_dist.assign(s, 0.0);
  g.initial_state_dist[0] = 1.0;
  return g;
}

std::vector<SolverSpec> default_solver_set(double alpha) {
  const RiskMeasure neutral = RiskMeasure::expectation();
  const RiskMeasure sensitive = RiskMeasure::cvar(alpha);
  return {
      {"MMBI", SolverKind::kMmbi, neutral},   {"IBR", SolverKind::kIbr, neutral},
      {"FP", SolverKind::kFp, neutral},       {"DAPG", SolverKind::kDapg, neutral},
      {"RS-MMBI", SolverKind::kMmbi, sensitive}, {"RS-IBR", SolverKind::kIbr, sensitive},
      {"RS-FP", SolverKind::kFp, sensitive},  {"RS-DAPG", SolverKind::kDapg, sensitive},
  };
}

namespace {

PerGameRecord evaluate_record(const Game& g, const SolveResult& result, std::uint64_t game_index,
                              const std::string& label, double metric_alpha) {
  const UtilityMatrix um = utility_matrix(g, result.theta);
  PerGameRecord rec;
  rec.game_index = game_index;
  rec.solver = label;
  std::tie(rec.u1, rec.u2) = expected_utility(um, g.type_prior);
  rec.sw = 0.5 * (rec.u1 + rec.u2);
  rec.cvar_u1 = cvar(dist_from_matrix(um.u1, g.type_prior), metric_alpha);
  rec.cvar_u2 = cvar(dist_from_matrix(um.u2, g.type_prior), metric_alpha);
  const Eigen::MatrixXd welfare = 0.5 * (um.u1 + um.u2);
  rec.cvar_sw = cvar(dist_from_matrix(welfare, g.type_prior), metric_alpha);
  rec.iterations = result.iterations_used;
  rec.converged = result.converged;
  return rec;
}

MetricStat stat_of(std::span<const double> xs) {
  MetricStat stat;
  if (xs.empty()) {
    return stat;
  }
  const double n = static_cast<double>(xs.size());
  stat.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) {
    ss += (x - stat.mean) * (x - stat.mean);
  }
  stat.stddev = std::sqrt(ss / n);
  return stat;
}

}  // namespace

BatchResult run_batch(const GeneratorSpec& spec, std::span<const SolverSpec> solvers,
                      const SolverConfig& cfg, int num_games, double metric_alpha, int jobs,
                      int mmbi_horizon) {
  validate_spec(spec);
  validate_config(cfg);
  if (num_games < 1) {
    throw ValidationError("invalid-spec: need at least one game");
  }
  if (solvers.empty()) {
    throw ValidationError("invalid-spec: need at least one solver");
  }

  // Games depend only on (master_seed, index), never on the solver set.
  std::vector<Game> games;
  games.reserve(num_games);
  for (int i = 0; i < num_games; ++i) {
    games.push_back(generate_game(spec, static_cast<std::uint64_t>(i)));
  }

  const std::size_t num_cells = games.size() * solvers.size();
  std::vector<std::optional<PerGameRecord>> cells(num_cells);
  std::vector<std::optional<CellFailure>> errors(num_cells);

  auto run_cell = [&](std::size_t cell) {
    const std::size_t game_index = cell / solvers.size();
    const SolverSpec& solver = solvers[cell % solvers.size()];
    SolverConfig cell_cfg = cfg;
    cell_cfg.risk = solver.risk;
    try {
      const SolveResult result =
          run_solver(solver.kind, games[game_index], cell_cfg, mmbi_horizon);
      cells[cell] = evaluate_record(games[game_index], result, game_index, solver.label,
                                    metric_alpha);
    } catch (const Error& e) {
      errors[cell] = CellFailure{game_index, solver.label, e.what()};
    }
  };

  if (jobs <= 1 || num_cells <= 1) {
    for (std::size_t cell = 0; cell < num_cells; ++cell) {
      run_cell(cell);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t cell = next.fetch_add(1); cell < num_cells; cell = next.fetch_add(1)) {
        run_cell(cell);
      }
    };
    std::vector<std::thread> pool;
    const int thread_count = std::min<int>(jobs, static_cast<int>(num_cells));
    pool.reserve(thread_count);
    for (int t = 0; t < thread_count; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  // Deterministic join in (game, solver) order.
  BatchResult out;
  for (std::size_t cell = 0; cell < num_cells; ++cell) {
    if (cells[cell].has_value()) {
      out.records.push_back(*cells[cell]);
    } else if (errors[cell].has_value()) {
      out.failures.push_back(*errors[cell]);
    }
  }

  for (std::size_t si = 0; si < solvers.size(); ++si) {
    std::vector<double> sw, cvar_sw, u1, u2, cvar_u1, cvar_u2;
    for (std::size_t gi = 0; gi < games.size(); ++gi) {
      const auto& cell = cells[gi * solvers.size() + si];
      if (!cell.has_value()) {
        continue;
      }
      sw.push_back(cell->sw);
      cvar_sw.push_back(cell->cvar_sw);
      u1.push_back(cell->u1);
      u2.push_back(cell->u2);
      cvar_u1.push_back(cell->cvar_u1);
      cvar_u2.push_back(cell->cvar_u2);
    }
    MetricRow row;
    row.algorithm = solvers[si].label;
    row.social_welfare = stat_of(sw);
    row.cvar_social_welfare = stat_of(cvar_sw);
    row.u1 = stat_of(u1);
    row.u2 = stat_of(u2);
    row.cvar_u1 = stat_of(cvar_u1);
    row.cvar_u2 = stat_of(cvar_u2);
    row.games_used = static_cast<int>(sw.size());
    row.failures = num_games - row.games_used;
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<bool> pareto_front(std::span<const ParetoPoint> points) {
  if (points.empty()) {
    return {};
  }
  for (const ParetoPoint& p : points) {
    if (p.space != points.front().space) {
      throw ValidationError("mixed-objective-space: points use different objective spaces");
    }
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ValidationError("pareto points must be finite");
    }
  }

  // Skyline sweep: after sorting by x descending (y descending within ties)
  // a point is dominated iff a strictly-higher-x point has y >= its own, or
  // an equal-x point has strictly higher y.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].x != points[b].x) {
      return points[a].x > points[b].x;
    }
    return points[a].y > points[b].y;
  });

  std::vector<bool> on_front(points.size(), false);
  double best_y_higher_x = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t run_end = i;
    while (run_end < order.size() && points[order[run_end]].x == points[order[i]].x) {
      ++run_end;
    }
    const double run_top_y = points[order[i]].y;
    for (std::size_t r = i; r < run_end; ++r) {
      const ParetoPoint& p = points[order[r]];
      const bool dominated = best_y_higher_x >= p.y || p.y < run_top_y;
      on_front[order[r]] = !dominated;
    }
    best_y_higher_x = std::max(best_y_higher_x, run_top_y);
    i = run_end;
  }
  return on_front;
}

namespace {

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string pareto_svg(std::span<const ParetoPoint> points, const std::vector<bool>& on_front,
                       const std::string& x_label, const std::string& y_label) {
  if (points.size() != on_front.size()) {
    throw ShapeError("shape-mismatch: points and front flags differ in length");
  }
  constexpr double width = 640.0;
  constexpr double height = 480.0;
  constexpr double left = 70.0;
  constexpr double right = 30.0;
  constexpr double top = 30.0;
  constexpr double bottom = 60.0;

  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const ParetoPoint& p : points) {
    x_min = std::min(x_min, p.x);
    x_max = std::max(x_max, p.x);
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
  }
  if (points.empty()) {
    x_min = y_min = 0.0;
    x_max = y_max = 1.0;
  }
  const double x_pad = (x_max - x_min) > 0 ? 0.08 * (x_max - x_min) : 1.0;
  const double y_pad = (y_max - y_min) > 0 ? 0.08 * (y_max - y_min) : 1.0;
  x_min -= x_pad;
  x_max += x_pad;
  y_min -= y_pad;
  y_max += y_pad;

  const auto px = [&](double x) {
    return left + (x - x_min) / (x_max - x_min) * (width - left - right);
  };
  const auto py = [&](double y) {
    return height - bottom - (y - y_min) / (y_max - y_min) * (height - top - bottom);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

  // Dominated region: staircase below/left of the front. Front points have
  // pairwise distinct coordinates along the skyline after deduplication.
  std::vector<std::pair<double, double>> front;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (on_front[i]) {
      front.emplace_back(points[i].x, points[i].y);
    }
  }
  std::sort(front.begin(), front.end());
  front.erase(std::unique(front.begin(), front.end()), front.end());
  if (!front.empty()) {
    svg << "  <path d=\"M" << svg_num(px(x_min)) << ' ' << svg_num(py(y_min));
    svg << " L" << svg_num(px(x_min)) << ' ' << svg_num(py(front.front().second));
    for (std::size_t i = 0; i < front.size(); ++i) {
      svg << " L" << svg_num(px(front[i].first)) << ' ' << svg_num(py(front[i].second));
      const double next_y = i + 1 < front.size() ? front[i + 1].second : y_min;
      svg << " L" << svg_num(px(front[i].first)) << ' ' << svg_num(py(next_y));
    }
    svg << " Z\" fill=\"#e8e8e8\" stroke=\"none\"/>\n";
  }

  // Axes with min/max tick labels.
  svg << "  <line x1=\"" << svg_num(left) << "\" y1=\"" << svg_num(height - bottom)
      << "\" x2=\"" << svg_num(width - right) << "\" y2=\"" << svg_num(height - bottom)
      << "\" stroke=\"black\"/>\n"
      << "  <line x1=\"" << svg_num(left) << "\" y1=\"" << svg_num(top) << "\" x2=\""
      << svg_num(left) << "\" y2=\"" << svg_num(height - bottom) << "\" stroke=\"black\"/>\n";
  svg << "  <text x=\"" << svg_num(left) << "\" y=\"" << svg_num(height - bottom + 18)
      << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_label(x_min) << "</text>\n"
      << "  <text x=\"" << svg_num(width - right) << "\" y=\"" << svg_num(height - bottom + 18)
      << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_label(x_max) << "</text>\n"
      << "  <text x=\"" << svg_num(left - 8) << "\" y=\"" << svg_num(height - bottom + 4)
      << "\" font-size=\"11\" text-anchor=\"end\">" << tick_label(y_min) << "</text>\n"
      << "  <text x=\"" << svg_num(left - 8) << "\" y=\"" << svg_num(top + 4)
      << "\" font-size=\"11\" text-anchor=\"end\">" << tick_label(y_max) << "</text>\n";
  svg << "  <text x=\"" << svg_num((left + width - right) / 2) << "\" y=\""
      << svg_num(height - 16) << "\" font-size=\"13\" text-anchor=\"middle\">"
      << xml_escape(x_label) << "</text>\n"
      << "  <text x=\"18\" y=\"" << svg_num((top + height - bottom) / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << svg_num((top + height - bottom) / 2) << ")\">" << xml_escape(y_label) << "</text>\n";

  for (std::size_t i = 0; i < points.size(); ++i) {
    const double cx = px(points[i].x);
    const double cy = py(points[i].y);
    if (on_front[i]) {
      svg << "  <circle cx=\"" << svg_num(cx) << "\" cy=\"" << svg_num(cy)
          << "\" r=\"5\" fill=\"#1f77b4\" stroke=\"black\"/>\n";
    } else {
      svg << "  <circle cx=\"" << svg_num(cx) << "\" cy=\"" << svg_num(cy)
          << "\" r=\"4\" fill=\"#999999\"/>\n";
    }
    svg << "  <text x=\"" << svg_num(cx + 7) << "\" y=\"" << svg_num(cy - 6)
        << "\" font-size=\"11\">" << xml_escape(points[i].algorithm) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace brg
