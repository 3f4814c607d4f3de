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

#include "brg/serialization.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace brg {

namespace {

using nlohmann::ordered_json;

// Translates a byte offset reported by the JSON parser into 1-based
// line/column for error messages.
std::pair<int, int> line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

ordered_json require_field(const ordered_json& j, const char* name) {
  if (!j.contains(name)) {
    throw ParseError(std::string("parse-error: missing field '") + name + "'");
  }
  return j.at(name);
}

void flatten_into(const ordered_json& node, std::span<const std::size_t> dims,
                  std::size_t depth, std::vector<double>& out, const char* name) {
  if (depth == dims.size()) {
    if (!node.is_number()) {
      throw ParseError(std::string("parse-error: field '") + name + "' has a non-numeric entry");
    }
    out.push_back(node.get<double>());
    return;
  }
  if (!node.is_array() || node.size() != dims[depth]) {
    std::ostringstream msg;
    msg << "parse-error: field '" << name << "' expects extent " << dims[depth] << " at depth "
        << depth << ", got " << (node.is_array() ? std::to_string(node.size()) : "non-array");
    throw ParseError(msg.str());
  }
  for (const auto& child : node) {
    flatten_into(child, dims, depth + 1, out, name);
  }
}

std::vector<double> parse_tensor(const ordered_json& j, const char* name,
                                 std::initializer_list<std::size_t> dims) {
  std::vector<double> out;
  std::size_t total = 1;
  for (std::size_t d : dims) {
    total *= d;
  }
  out.reserve(total);
  flatten_into(require_field(j, name), std::span<const std::size_t>(dims.begin(), dims.size()),
               0, out, name);
  return out;
}

// Nested row-major array-of-arrays view of a flat tensor.
ordered_json nest_tensor(std::span<const double> flat, std::span<const std::size_t> dims) {
  if (dims.size() == 1) {
    ordered_json arr = ordered_json::array();
    for (double v : flat) {
      arr.push_back(v);
    }
    return arr;
  }
  const std::size_t stride = flat.size() / dims[0];
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < dims[0]; ++i) {
    arr.push_back(nest_tensor(flat.subspan(i * stride, stride), dims.subspan(1)));
  }
  return arr;
}

ordered_json nest_tensor(std::span<const double> flat, std::initializer_list<std::size_t> dims) {
  return nest_tensor(flat, std::span<const std::size_t>(dims.begin(), dims.size()));
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buffer;
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), end);
}

std::string game_to_json(const Game& g) {
  const std::size_t s = g.num_states;
  const std::size_t a1 = g.num_actions[0];
  const std::size_t a2 = g.num_actions[1];
  const std::size_t k = g.num_types;

  ordered_json j;
  j["version"] = kGameFormatVersion;
  j["num_states"] = g.num_states;
  j["num_actions"] = {g.num_actions[0], g.num_actions[1]};
  j["num_types"] = g.num_types;
  j["discount"] = g.discount;
  j["rewards"] = nest_tensor(g.rewards, {2, k, s, a1, a2});
  j["transition"] = nest_tensor(g.transition, {s, a1, a2, s});
  j["type_prior"] = nest_tensor(g.type_prior, {k, k});
  j["initial_state_dist"] = nest_tensor(g.initial_state_dist, {s});
  return j.dump(2) + "\n";
}

Game game_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream msg;
    msg << "parse-error at line " << line << ", column " << column << ": " << e.what();
    throw ParseError(msg.str(), line, column);
  }

  try {
    const std::string version = require_field(j, "version").get<std::string>();
    if (version != kGameFormatVersion) {
      throw ParseError("parse-error: unsupported version '" + version + "' (expected " +
                       kGameFormatVersion + ")");
    }
    Game g;
    g.num_states = require_field(j, "num_states").get<int>();
    const auto actions = require_field(j, "num_actions");
    if (!actions.is_array() || actions.size() != 2) {
      throw ParseError("parse-error: num_actions must be a pair");
    }
    g.num_actions = {actions[0].get<int>(), actions[1].get<int>()};
    g.num_types = require_field(j, "num_types").get<int>();
    g.discount = require_field(j, "discount").get<double>();
    if (g.num_states <= 0 || g.num_actions[0] <= 0 || g.num_actions[1] <= 0 || g.num_types <= 0) {
      throw ParseError("parse-error: dimensions must be positive");
    }

    const std::size_t s = g.num_states;
    const std::size_t a1 = g.num_actions[0];
    const std::size_t a2 = g.num_actions[1];
    const std::size_t k = g.num_types;
    g.rewards = parse_tensor(j, "rewards", {2, k, s, a1, a2});
    g.transition = parse_tensor(j, "transition", {s, a1, a2, s});
    g.type_prior = parse_tensor(j, "type_prior", {k, k});
    g.initial_state_dist = parse_tensor(j, "initial_state_dist", {s});

    validate_game(g);
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("parse-error: ") + e.what());
  }
}

Game load_game(const std::filesystem::path& path) {
  return game_from_json(read_text_file(path));
}

void save_game(const Game& g, const std::filesystem::path& path) {
  write_text_file(path, game_to_json(g));
}

std::string solve_result_to_json(const SolveResult& result, const std::string& solver,
                                 const RiskMeasure& rm, const PerGameRecord& metrics) {
  const PolicyParams& theta = result.theta;
  const std::size_t k = theta.num_types();
  const std::size_t s = theta.num_states();

  ordered_json j;
  j["solver"] = solver;
  j["risk"] = rm.name();
  j["converged"] = result.converged;
  j["iterations_used"] = result.iterations_used;

  ordered_json m;
  m["U1"] = metrics.u1;
  m["U2"] = metrics.u2;
  m["SW"] = metrics.sw;
  m["CVaR_U1"] = metrics.cvar_u1;
  m["CVaR_U2"] = metrics.cvar_u2;
  m["CVaR_SW"] = metrics.cvar_sw;
  j["metrics"] = m;

  ordered_json trace = ordered_json::array();
  for (const TraceEntry& entry : result.trace) {
    trace.push_back({{"U1", entry.u1},
                     {"U2", entry.u2},
                     {"rho1", entry.rho1},
                     {"rho2", entry.rho2}});
  }
  j["trace"] = trace;

  ordered_json theta_json = ordered_json::array();
  for (int player = 0; player < 2; ++player) {
    theta_json.push_back(nest_tensor(theta.player_block(player),
                                     {k, s, static_cast<std::size_t>(theta.num_actions(player))}));
  }
  j["theta"] = theta_json;
  return j.dump(2) + "\n";
}

std::string per_game_csv(std::span<const PerGameRecord> records) {
  std::string out = "game_index,solver,U1,U2,SW,CVaR_U1,CVaR_U2,CVaR_SW,iterations,converged\n";
  for (const PerGameRecord& r : records) {
    out += std::to_string(r.game_index);
    out += ',';
    out += r.solver;
    for (double v : {r.u1, r.u2, r.sw, r.cvar_u1, r.cvar_u2, r.cvar_sw}) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += std::to_string(r.iterations);
    out += ',';
    out += r.converged ? '1' : '0';
    out += '\n';
  }
  return out;
}

namespace {

struct Column {
  const char* name;
  MetricStat MetricRow::*stat;
};

std::vector<Column> table_columns(TableKind kind) {
  if (kind == TableKind::kSocialWelfare) {
    return {{"SW", &MetricRow::social_welfare}, {"CVaR_SW", &MetricRow::cvar_social_welfare}};
  }
  return {{"U1", &MetricRow::u1},
          {"U2", &MetricRow::u2},
          {"CVaR_U1", &MetricRow::cvar_u1},
          {"CVaR_U2", &MetricRow::cvar_u2}};
}

}  // namespace

std::string metric_table_csv(std::span<const MetricRow> rows, TableKind kind) {
  const auto columns = table_columns(kind);
  std::string out = "algorithm";
  for (const Column& c : columns) {
    out += ',';
    out += c.name;
    out += "_mean,";
    out += c.name;
    out += "_std";
  }
  out += ",games,failures\n";
  for (const MetricRow& row : rows) {
    out += row.algorithm;
    for (const Column& c : columns) {
      const MetricStat& stat = row.*(c.stat);
      out += ',';
      out += format_double(stat.mean);
      out += ',';
      out += format_double(stat.stddev);
    }
    out += ',';
    out += std::to_string(row.games_used);
    out += ',';
    out += std::to_string(row.failures);
    out += '\n';
  }
  return out;
}

std::string metric_table_json(std::span<const MetricRow> rows, TableKind kind) {
  const auto columns = table_columns(kind);
  ordered_json arr = ordered_json::array();
  for (const MetricRow& row : rows) {
    ordered_json r;
    r["algorithm"] = row.algorithm;
    for (const Column& c : columns) {
      const MetricStat& stat = row.*(c.stat);
      r[c.name] = {{"mean", stat.mean}, {"std", stat.stddev}};
    }
    r["games"] = row.games_used;
    r["failures"] = row.failures;
    arr.push_back(std::move(r));
  }
  return arr.dump(2) + "\n";
}

std::string pareto_csv(std::span<const ParetoPoint> points, const std::vector<bool>& on_front) {
  std::string out = "solver,x,y,on_front\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out += points[i].algorithm;
    out += ',';
    out += format_double(points[i].x);
    out += ',';
    out += format_double(points[i].y);
    out += ',';
    out += on_front[i] ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) {
      return i;
    }
  }
  throw Error("missing-columns: no column named '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  CsvTable table;
  std::istringstream lines(text);
  std::string line;
  bool first = true;
  while (std::getline(lines, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("io-error: cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("io-error: cannot open '" + path.string() + "' for writing");
  }
  out << content;
  if (!out) {
    throw IoError("io-error: failed writing '" + path.string() + "'");
  }
}

}  // namespace brg
