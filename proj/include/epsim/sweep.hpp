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

#ifndef EPSIM_SWEEP_HPP
#define EPSIM_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epsim/harness.hpp"
#include "epsim/process.hpp"

#include <nlohmann/json_fwd.hpp>

namespace epsim::sweep {

inline constexpr const char* kToolName = "epsim";
inline constexpr const char* kToolVersion = "0.1.0";

/// Sweep endpoints default to [1e-4, 1 - 1e-4]: the complexity measures
/// are undefined on the closed boundary.
inline constexpr double kDefaultLow = 1e-4;
inline constexpr double kDefaultHigh = 1.0 - 1e-4;

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name);

/// One evaluated parameter point. gap marks C_Q < 1 < C_mu: the classical
/// memory needs more than one bit while the quantum memory is a qubit.
struct SweepRow {
  double p = 0.0;
  double q = 0.0;
  double c_mu = 0.0;
  double c_q = 0.0;
  bool gap = false;
};

struct SurfaceConfig {
  int grid = 99;
  double low = kDefaultLow;
  double high = kDefaultHigh;
  int jobs = 1;
};

struct CrossSectionConfig {
  char fixed_name = 'q';  // 'p' or 'q'
  double fixed_value = 0.5;
  int grid = 99;
  double low = kDefaultLow;
  double high = kDefaultHigh;
  int jobs = 1;
};

SweepRow evaluate_point(const process::ProcessParams& params);

/// Full grid, p-major row order, grid points evenly spaced on [low, high].
std::vector<SweepRow> compute_surface(const SurfaceConfig& config);

/// 1-D sweep with one parameter pinned.
std::vector<SweepRow> compute_cross_section(const CrossSectionConfig& config);

/// CSV with header `p,q,c_mu,c_q,gap`; gap is 0/1.
std::string rows_to_csv(const std::vector<SweepRow>& rows);
nlohmann::json rows_to_json(const std::vector<SweepRow>& rows);

enum class Engine { classical, quantum };

Engine parse_engine(const std::string& name);

struct TrajectoryConfig {
  process::ProcessParams params;
  Engine engine = Engine::classical;
  std::uint64_t steps = 1;
  std::uint64_t seed = 0;
  std::optional<int> initial;  // empty = stationary draw
};

struct TrajectoryResult {
  std::vector<int> symbols;
  std::vector<int> states;  // causal-state label after each emission
};

TrajectoryResult run_trajectory(const TrajectoryConfig& config);

/// CSV with header `step,symbol,state`.
std::string trajectory_to_csv(const TrajectoryResult& result);
nlohmann::json trajectory_to_json(const TrajectoryResult& result);

/// Side-by-side memory requirements of the two simulators at one point.
struct AdvantageSummary {
  process::ProcessParams params;
  int classical_dimension = 3;
  int quantum_dimension = 2;
  double classical_max_entropy = 0.0;
  double quantum_max_entropy = 0.0;
  double c_mu = 0.0;
  double c_q = 0.0;
  double entropy_saving = 0.0;  // per-simulator i.i.d. saving C_mu - C_Q
  bool gap = false;
};

AdvantageSummary advantage_summary(const process::ProcessParams& params);

nlohmann::json advantage_to_json(const AdvantageSummary& summary);
std::string advantage_to_text(const AdvantageSummary& summary);

/// Writes content to path, then a sibling `<path>.manifest.json` carrying
/// the tool version, the command, the full configuration echo, the seed,
/// a timestamp, and the row count. Data files never embed the timestamp,
/// so identical config + seed reproduces them byte for byte.
void write_output_with_manifest(const std::string& path, const std::string& content,
                                const std::string& command,
                                const nlohmann::json& config_echo,
                                std::uint64_t seed, std::size_t row_count);

}  // namespace epsim::sweep

#endif
