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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "epsim/harness.hpp"
#include "epsim/process.hpp"
#include "epsim/sweep.hpp"

namespace {

using epsim::harness::NoiseModel;
using epsim::harness::TomographyConditioning;
using epsim::process::ProcessParams;

constexpr int kExitInvalidInput = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitInternal = 4;

std::pair<char, double> parse_fix(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size()) {
    throw std::invalid_argument("--fix expects p=VALUE or q=VALUE");
  }
  const std::string name = text.substr(0, eq);
  if (name != "p" && name != "q") {
    throw std::invalid_argument("--fix expects p=VALUE or q=VALUE");
  }
  return {name[0], std::stod(text.substr(eq + 1))};
}

struct CommonOutput {
  std::string out_path;
  std::string format = "csv";
};

void add_output_flags(CLI::App* cmd, CommonOutput& out, bool format_json_only = false) {
  cmd->add_option("--out", out.out_path, "Output data file path")->required();
  if (!format_json_only) {
    cmd->add_option("--format", out.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Simulator toolkit for the post-processed perturbed coin: optimal "
               "classical and memory-compressed quantum engines, verification, "
               "and complexity sweeps"};
  app.require_subcommand(1);

  // surface
  auto* surface = app.add_subcommand(
      "surface", "Evaluate C_mu and C_Q over a (p, q) grid");
  epsim::sweep::SurfaceConfig surface_config;
  CommonOutput surface_out;
  std::uint64_t surface_seed = 0;
  surface->add_option("--grid", surface_config.grid, "Points per axis")
      ->check(CLI::Range(2, 4096));
  surface->add_option("--jobs", surface_config.jobs, "Worker threads")
      ->check(CLI::Range(1, 256));
  surface->add_option("--seed", surface_seed, "Seed recorded in the manifest");
  add_output_flags(surface, surface_out);

  // cross-section
  auto* section = app.add_subcommand(
      "cross-section", "Evaluate C_mu and C_Q along one axis with the other fixed");
  epsim::sweep::CrossSectionConfig section_config;
  CommonOutput section_out;
  std::string section_fix;
  std::uint64_t section_seed = 0;
  section->add_option("--fix", section_fix, "Fixed parameter, e.g. q=0.5")->required();
  section->add_option("--grid", section_config.grid, "Points along the sweep")
      ->check(CLI::Range(2, 1 << 20));
  section->add_option("--jobs", section_config.jobs, "Worker threads")
      ->check(CLI::Range(1, 256));
  section->add_option("--seed", section_seed, "Seed recorded in the manifest");
  add_output_flags(section, section_out);

  // trajectory
  auto* trajectory = app.add_subcommand(
      "trajectory", "Sample an output trajectory with either engine");
  epsim::sweep::TrajectoryConfig traj_config;
  CommonOutput traj_out;
  std::string traj_engine = "classical";
  std::string traj_initial = "stationary";
  trajectory->add_option("--p", traj_config.params.p, "Flip probability 0 -> 1")
      ->required();
  trajectory->add_option("--q", traj_config.params.q, "Flip probability 1 -> 0")
      ->required();
  trajectory->add_option("--engine", traj_engine, "classical or quantum")
      ->check(CLI::IsMember({"classical", "quantum"}));
  trajectory->add_option("--steps", traj_config.steps, "Number of emissions")
      ->check(CLI::PositiveNumber);
  trajectory->add_option("--seed", traj_config.seed, "RNG seed");
  trajectory->add_option("--initial", traj_initial,
                         "Initial causal state: 0, 1, 2, or stationary");
  add_output_flags(trajectory, traj_out);

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Run the finite-shot verification pipeline and write the report");
  ProcessParams verify_params;
  NoiseModel verify_noise;
  std::uint64_t verify_shots = 100000;
  std::uint64_t verify_seed = 0;
  std::string verify_conditioning = "outcome";
  std::vector<double> verify_eff;
  CommonOutput verify_out;
  verify->add_option("--p", verify_params.p, "Flip probability 0 -> 1")->required();
  verify->add_option("--q", verify_params.q, "Flip probability 1 -> 0")->required();
  verify->add_option("--shots", verify_shots, "Shots per input state and per basis")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_seed, "RNG seed");
  verify->add_option("--noise-depol", verify_noise.depolarizing,
                     "Depolarizing strength on the collapsed memory qubit")
      ->check(CLI::Range(0.0, 1.0));
  verify->add_option("--eff", verify_eff,
                     "Per-channel detection efficiencies eta0,eta1,eta2")
      ->delimiter(',')
      ->expected(3);
  verify->add_option("--conditioning", verify_conditioning,
                     "Tomography conditioning: input or outcome")
      ->check(CLI::IsMember({"input", "outcome"}));
  verify->add_option("--out", verify_out.out_path, "Report file path")->required();

  // advantage
  auto* advantage = app.add_subcommand(
      "advantage", "Report single-shot and i.i.d. memory advantage at one point");
  ProcessParams advantage_params;
  std::string advantage_format = "text";
  std::string advantage_out_path;
  advantage->add_option("--p", advantage_params.p, "Flip probability 0 -> 1")
      ->required();
  advantage->add_option("--q", advantage_params.q, "Flip probability 1 -> 0")
      ->required();
  advantage->add_option("--format", advantage_format, "Stdout format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  advantage->add_option("--out", advantage_out_path,
                        "Optional JSON summary file path");

  CLI11_PARSE(app, argc, argv);

  if (surface->parsed()) {
    const auto rows = epsim::sweep::compute_surface(surface_config);
    const auto format = epsim::sweep::parse_format(surface_out.format);
    const std::string content = format == epsim::sweep::OutputFormat::csv
                                    ? epsim::sweep::rows_to_csv(rows)
                                    : epsim::sweep::rows_to_json(rows).dump(2) + "\n";
    nlohmann::json echo = {{"grid", surface_config.grid},
                           {"low", surface_config.low},
                           {"high", surface_config.high},
                           {"jobs", surface_config.jobs},
                           {"format", surface_out.format}};
    epsim::sweep::write_output_with_manifest(surface_out.out_path, content, "surface",
                                             echo, surface_seed, rows.size());
    return 0;
  }

  if (section->parsed()) {
    const auto [name, value] = parse_fix(section_fix);
    section_config.fixed_name = name;
    section_config.fixed_value = value;
    const auto rows = epsim::sweep::compute_cross_section(section_config);
    const auto format = epsim::sweep::parse_format(section_out.format);
    const std::string content = format == epsim::sweep::OutputFormat::csv
                                    ? epsim::sweep::rows_to_csv(rows)
                                    : epsim::sweep::rows_to_json(rows).dump(2) + "\n";
    nlohmann::json echo = {{"fix", section_fix},
                           {"grid", section_config.grid},
                           {"low", section_config.low},
                           {"high", section_config.high},
                           {"jobs", section_config.jobs},
                           {"format", section_out.format}};
    epsim::sweep::write_output_with_manifest(section_out.out_path, content,
                                             "cross-section", echo, section_seed,
                                             rows.size());
    return 0;
  }

  if (trajectory->parsed()) {
    traj_config.engine = epsim::sweep::parse_engine(traj_engine);
    if (traj_initial != "stationary") {
      if (traj_initial != "0" && traj_initial != "1" && traj_initial != "2") {
        throw std::invalid_argument("--initial must be 0, 1, 2, or stationary");
      }
      traj_config.initial = traj_initial[0] - '0';
    }
    const auto result = epsim::sweep::run_trajectory(traj_config);
    const auto format = epsim::sweep::parse_format(traj_out.format);
    const std::string content =
        format == epsim::sweep::OutputFormat::csv
            ? epsim::sweep::trajectory_to_csv(result)
            : epsim::sweep::trajectory_to_json(result).dump(2) + "\n";
    nlohmann::json echo = {{"p", traj_config.params.p},
                           {"q", traj_config.params.q},
                           {"engine", traj_engine},
                           {"steps", traj_config.steps},
                           {"initial", traj_initial},
                           {"format", traj_out.format}};
    epsim::sweep::write_output_with_manifest(traj_out.out_path, content, "trajectory",
                                             echo, traj_config.seed,
                                             result.symbols.size());
    return 0;
  }

  if (verify->parsed()) {
    if (!verify_eff.empty()) {
      verify_noise.efficiency = {verify_eff[0], verify_eff[1], verify_eff[2]};
    }
    const auto conditioning = verify_conditioning == "input"
                                  ? TomographyConditioning::per_input
                                  : TomographyConditioning::per_outcome;
    const auto report = epsim::harness::verification_report(
        verify_params, verify_shots, verify_noise, verify_seed, conditioning);
    const std::string content =
        epsim::harness::report_to_json(report).dump(2) + "\n";
    nlohmann::json echo = {{"p", verify_params.p},
                           {"q", verify_params.q},
                           {"shots", verify_shots},
                           {"noise_depol", verify_noise.depolarizing},
                           {"eff", verify_noise.efficiency},
                           {"conditioning", verify_conditioning}};
    epsim::sweep::write_output_with_manifest(verify_out.out_path, content, "verify",
                                             echo, verify_seed, 1);
    return 0;
  }

  if (advantage->parsed()) {
    const auto summary = epsim::sweep::advantage_summary(advantage_params);
    if (advantage_format == "json") {
      std::cout << epsim::sweep::advantage_to_json(summary).dump(2) << "\n";
    } else {
      std::cout << epsim::sweep::advantage_to_text(summary);
    }
    if (!advantage_out_path.empty()) {
      nlohmann::json echo = {{"p", advantage_params.p}, {"q", advantage_params.q}};
      epsim::sweep::write_output_with_manifest(
          advantage_out_path, epsim::sweep::advantage_to_json(summary).dump(2) + "\n",
          "advantage", echo, 0, 1);
    }
    return 0;
  }

  return kExitInternal;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "epsim: invalid-input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "epsim: runtime: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "epsim: internal: " << e.what() << "\n";
    return kExitInternal;
  }
}
