// Copyright 2026 The epsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "epsim/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "epsim/quantum.hpp"

namespace epsim::sweep {

namespace {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

void check_range(double low, double high) {
  if (!(low > 0.0 && high < 1.0 && low < high)) {
    throw std::invalid_argument("sweep range must satisfy 0 < low < high < 1");
  }
}

double grid_point(double low, double high, int grid, int k) {
  if (k == 0) return low;
  if (k == grid - 1) return high;
  return low + (high - low) * static_cast<double>(k) / static_cast<double>(grid - 1);
}

/// Evaluates `count` rows with row_of on `jobs` threads; rows land in
/// canonical index order regardless of the thread schedule.
template <typename RowFn>
std::vector<SweepRow> parallel_rows(std::size_t count, int jobs, RowFn row_of) {
  std::vector<SweepRow> rows(count);
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) rows[i] = row_of(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        rows[i] = row_of(i);
      }
    });
  }
  for (auto& w : workers) w.join();
  return rows;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format: " + name);
}

Engine parse_engine(const std::string& name) {
  if (name == "classical") return Engine::classical;
  if (name == "quantum") return Engine::quantum;
  throw std::invalid_argument("unknown engine: " + name);
}

SweepRow evaluate_point(const process::ProcessParams& params) {
  SweepRow row;
  row.p = params.p;
  row.q = params.q;
  row.c_mu = process::classical_complexity(params);
  row.c_q = quantum::quantum_complexity(params);
  row.gap = row.c_q < 1.0 && row.c_mu > 1.0;
  return row;
}

std::vector<SweepRow> compute_surface(const SurfaceConfig& config) {
  if (config.grid < 2) throw std::invalid_argument("grid resolution must be >= 2");
  check_range(config.low, config.high);
  const std::size_t n = static_cast<std::size_t>(config.grid);
  return parallel_rows(n * n, config.jobs, [&](std::size_t index) {
    const int pi = static_cast<int>(index / n);
    const int qi = static_cast<int>(index % n);
    return evaluate_point({grid_point(config.low, config.high, config.grid, pi),
                           grid_point(config.low, config.high, config.grid, qi)});
  });
}

std::vector<SweepRow> compute_cross_section(const CrossSectionConfig& config) {
  if (config.grid < 2) throw std::invalid_argument("grid resolution must be >= 2");
  check_range(config.low, config.high);
  if (config.fixed_name != 'p' && config.fixed_name != 'q') {
    throw std::invalid_argument("cross-section must fix p or q");
  }
  if (!(config.fixed_value > 0.0 && config.fixed_value < 1.0)) {
    throw std::invalid_argument("fixed parameter must lie in (0, 1)");
  }
  return parallel_rows(static_cast<std::size_t>(config.grid), config.jobs,
                       [&](std::size_t index) {
                         const double moving = grid_point(config.low, config.high,
                                                          config.grid,
                                                          static_cast<int>(index));
                         if (config.fixed_name == 'p') {
                           return evaluate_point({config.fixed_value, moving});
                         }
                         return evaluate_point({moving, config.fixed_value});
                       });
}

std::string rows_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "p,q,c_mu,c_q,gap\n";
  for (const auto& row : rows) {
    out += format_double(row.p);
    out += ',';
    out += format_double(row.q);
    out += ',';
    out += format_double(row.c_mu);
    out += ',';
    out += format_double(row.c_q);
    out += ',';
    out += row.gap ? '1' : '0';
    out += '\n';
  }
  return out;
}

nlohmann::json rows_to_json(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    arr.push_back({{"p", row.p},
                   {"q", row.q},
                   {"c_mu", row.c_mu},
                   {"c_q", row.c_q},
                   {"advantage", row.c_mu - row.c_q},
                   {"gap", row.gap}});
  }
  return {{"rows", arr}};
}

TrajectoryResult run_trajectory(const TrajectoryConfig& config) {
  config.params.validate();
  if (config.initial.has_value() && (*config.initial < 0 || *config.initial > 2)) {
    throw std::invalid_argument("initial causal state must be 0, 1, or 2");
  }
  // Engine-tagged streams: the engines share the seed policy and produce
  // identically distributed, not identical, sequences.
  Rng rng = Rng(config.seed).stream(config.engine == Engine::classical ? 10 : 11);
  std::vector<process::CausalState> states;
  process::OutputTrajectory traj;
  if (config.engine == Engine::classical) {
    std::optional<process::CausalState> initial;
    if (config.initial) initial = process::causal_state_from_index(*config.initial);
    traj = process::run_classical_trajectory(config.params, initial, config.steps,
                                             rng, &states);
  } else {
    traj = quantum::run_quantum_trajectory(config.params, config.initial,
                                           config.steps, rng, &states);
  }
  TrajectoryResult result;
  result.symbols.reserve(traj.symbols.size());
  result.states.reserve(states.size());
  for (std::uint8_t s : traj.symbols) result.symbols.push_back(s);
  for (process::CausalState s : states) result.states.push_back(static_cast<int>(s));
  return result;
}

std::string trajectory_to_csv(const TrajectoryResult& result) {
  std::string out = "step,symbol,state\n";
  for (std::size_t i = 0; i < result.symbols.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += std::to_string(result.symbols[i]);
    out += ',';
    out += std::to_string(result.states[i]);
    out += '\n';
  }
  return out;
}

nlohmann::json trajectory_to_json(const TrajectoryResult& result) {
  return {{"symbols", result.symbols}, {"states", result.states}};
}

AdvantageSummary advantage_summary(const process::ProcessParams& params) {
  AdvantageSummary summary;
  summary.params = params;
  summary.classical_max_entropy = process::classical_max_entropy();
  summary.quantum_max_entropy = quantum::quantum_max_entropy();
  summary.c_mu = process::classical_complexity(params);
  summary.c_q = quantum::quantum_complexity(params);
  summary.entropy_saving = summary.c_mu - summary.c_q;
  summary.gap = summary.c_q < 1.0 && summary.c_mu > 1.0;
  return summary;
}

nlohmann::json advantage_to_json(const AdvantageSummary& s) {
  return {{"params", {{"p", s.params.p}, {"q", s.params.q}}},
          {"classical_dimension", s.classical_dimension},
          {"quantum_dimension", s.quantum_dimension},
          {"classical_max_entropy", s.classical_max_entropy},
          {"quantum_max_entropy", s.quantum_max_entropy},
          {"c_mu", s.c_mu},
          {"c_q", s.c_q},
          {"entropy_saving_per_simulator", s.entropy_saving},
          {"gap", s.gap}};
}

std::string advantage_to_text(const AdvantageSummary& s) {
  std::string out;
  out += "p = " + format_double(s.params.p) + ", q = " + format_double(s.params.q) + "\n";
  out += "memory dimension     classical D = 3, quantum D = 2\n";
  out += "max-entropy (log2 D) classical = " + format_double(s.classical_max_entropy) +
         " bits, quantum = " + format_double(s.quantum_max_entropy) + " bits\n";
  out += "statistical complexity C_mu = " + format_double(s.c_mu) +
         " bits, C_Q = " + format_double(s.c_q) + " bits\n";
  out += "i.i.d. saving per simulator (N simulators save N times this): " +
         format_double(s.entropy_saving) + " bits\n";
  out += std::string("gap region (C_Q < 1 < C_mu): ") + (s.gap ? "yes" : "no") + "\n";
  return out;
}

void write_output_with_manifest(const std::string& path, const std::string& content,
                                const std::string& command,
                                const nlohmann::json& config_echo,
                                std::uint64_t seed, std::size_t row_count) {
  write_file(path, content);
  nlohmann::json manifest = {{"tool", kToolName},
                             {"version", kToolVersion},
                             {"command", command},
                             {"config", config_echo},
                             {"seed", seed},
                             {"timestamp", iso_timestamp()},
                             {"output", path},
                             {"rows", row_count}};
  write_file(path + ".manifest.json", manifest.dump(2) + "\n");
}

}  // namespace epsim::sweep
