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

#include "epsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace epsim::harness {

namespace {

/// Transition row reweighted by detection efficiency and renormalized:
/// the distribution of recorded outcomes for one input state.
std::array<double, 3> detected_row(const process::TransitionMatrix& t, int input,
                                   const NoiseModel& noise) {
  const auto row = t.row(input);
  std::array<double, 3> biased{};
  double total = 0.0;
  for (int j = 0; j < 3; ++j) {
    biased[j] = row[j] * noise.efficiency[j];
    total += biased[j];
  }
  if (total <= 0.0) throw std::runtime_error("every output channel is dark");
  for (double& w : biased) w /= total;
  return biased;
}

quantum::DensityMatrix ideal_pure_state(const process::ProcessParams& params, int j) {
  return quantum::DensityMatrix::from_pure(quantum::encode_causal_qubit(params, j));
}

/// Post-measurement memory mixture for one input, weighted by what the
/// detectors record.
quantum::DensityMatrix detected_input_mixture(const process::ProcessParams& params,
                                              const std::array<double, 3>& weights,
                                              double depolarizing) {
  std::array<linalg::cplx, 4> acc{};
  for (int j = 0; j < 3; ++j) {
    if (weights[j] == 0.0) continue;
    const auto rho = depolarize(ideal_pure_state(params, j), depolarizing);
    acc[0] += weights[j] * rho.at(0, 0);
    acc[1] += weights[j] * rho.at(0, 1);
    acc[2] += weights[j] * rho.at(1, 0);
    acc[3] += weights[j] * rho.at(1, 1);
  }
  return quantum::DensityMatrix(acc[0], acc[1], acc[2], acc[3]);
}

quantum::DensityMatrix ideal_input_mixture(const process::ProcessParams& params,
                                           const process::TransitionMatrix& t,
                                           int input) {
  NoiseModel none;
  return detected_input_mixture(params, detected_row(t, input, none), 0.0);
}

struct FrequencyPipelineInput {
  // Detected-output frequencies per input state (rows sum to 1).
  std::array<std::array<double, 3>, 3> frequencies{};
  // Bloch estimates per tomographed state.
  ConditionalStates conditional;                                   // per_outcome
  std::array<std::optional<quantum::DensityMatrix>, 3> per_input;  // per_input
};

struct PipelineResult {
  process::TransitionMatrix t_hat;
  ConditionalStates conditional;
  std::array<std::optional<quantum::DensityMatrix>, 3> per_input;
  quantum::DensityMatrix stationary;
  double c_q;
};

PipelineResult run_estimation(const FrequencyPipelineInput& input,
                              TomographyConditioning conditioning) {
  std::array<double, 9> entries{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) entries[i * 3 + j] = input.frequencies[i][j];
  }
  process::TransitionMatrix t_hat(entries);
  quantum::DensityMatrix stationary = quantum::DensityMatrix::maximally_mixed();
  if (conditioning == TomographyConditioning::per_outcome) {
    stationary = reconstruct_stationary(t_hat, input.conditional);
  } else {
    std::array<quantum::DensityMatrix, 3> per_input{
        quantum::DensityMatrix::maximally_mixed(),
        quantum::DensityMatrix::maximally_mixed(),
        quantum::DensityMatrix::maximally_mixed()};
    for (int i = 0; i < 3; ++i) {
      if (!input.per_input[i].has_value()) {
        throw std::invalid_argument("missing reconstructed state for an input");
      }
      per_input[i] = *input.per_input[i];
    }
    stationary = reconstruct_stationary(t_hat, per_input);
  }
  return PipelineResult{t_hat, input.conditional, input.per_input, stationary,
                        quantum::von_neumann_entropy(stationary)};
}

quantum::DensityMatrix reconstruct_from_counts(const TomographyCounts& counts) {
  return project_to_physical(linear_inversion(counts));
}

/// Poisson-resamples a counts table and tomography records, then reruns
/// the estimation path. Draw order: counts rows (input-major, output
/// within), then tomography targets in their report order with plus then
/// minus per basis.
double bootstrap_c_q(const CountsTable& counts,
                     const std::vector<std::pair<std::pair<int, int>, TomographyCounts>>&
                         tomography,
                     TomographyConditioning conditioning, Rng rng) {
  FrequencyPipelineInput input;
  CountsTable resampled;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      resampled.row[i].n[j] =
          rng.poisson(static_cast<double>(counts.row[i].n[j]));
    }
  }
  const auto t_resampled = estimate_transition_matrix(resampled);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) input.frequencies[i][j] = t_resampled.at(i, j);
  }
  for (const auto& [key, record] : tomography) {
    TomographyCounts fresh;
    for (int b = 0; b < 3; ++b) {
      fresh.basis[b].plus = rng.poisson(static_cast<double>(record.basis[b].plus));
      fresh.basis[b].minus = rng.poisson(static_cast<double>(record.basis[b].minus));
    }
    const auto state = reconstruct_from_counts(fresh);
    if (key.second >= 0) {
      input.conditional[key.first][key.second] = state;
    } else {
      input.per_input[key.first] = state;
    }
  }
  return run_estimation(input, conditioning).c_q;
}

}  // namespace

void NoiseModel::validate() const {
  if (!(depolarizing >= 0.0 && depolarizing <= 1.0)) {
    throw std::invalid_argument("depolarizing strength must be in [0, 1]");
  }
  for (double eta : efficiency) {
    if (!(eta > 0.0 && eta <= 1.0)) {
      throw std::invalid_argument("channel efficiency must be in (0, 1]");
    }
  }
}

bool NoiseModel::is_noiseless() const {
  return depolarizing == 0.0 && efficiency[0] == 1.0 && efficiency[1] == 1.0 &&
         efficiency[2] == 1.0;
}

std::string to_string(TomographyConditioning c) {
  return c == TomographyConditioning::per_input ? "per_input" : "per_outcome";
}

CountsRow simulate_counts(const process::ProcessParams& params, int input,
                          std::uint64_t shots, const NoiseModel& noise, Rng& rng) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  noise.validate();
  const auto weights =
      detected_row(process::build_transition_matrix(params), input, noise);
  CountsRow row;
  for (std::uint64_t s = 0; s < shots; ++s) {
    row.n[rng.categorical(weights)] += 1;
  }
  return row;
}

process::TransitionMatrix estimate_transition_matrix(const CountsTable& counts) {
  std::array<double, 9> entries{};
  for (int i = 0; i < 3; ++i) {
    const double total = static_cast<double>(counts.row[i].total());
    if (total <= 0.0) {
      throw std::invalid_argument("cannot estimate a transition row from zero counts");
    }
    for (int j = 0; j < 3; ++j) {
      entries[i * 3 + j] = static_cast<double>(counts.row[i].n[j]) / total;
    }
  }
  return process::TransitionMatrix(entries);
}

TomographyCounts simulate_tomography(const quantum::DensityMatrix& state,
                                     std::uint64_t shots_per_basis, Rng& rng) {
  if (shots_per_basis < 1) throw std::invalid_argument("shots must be >= 1");
  const auto bloch = state.bloch();
  TomographyCounts counts;
  for (int b = 0; b < 3; ++b) {
    const double p_plus = std::clamp(0.5 * (1.0 + bloch[b]), 0.0, 1.0);
    for (std::uint64_t s = 0; s < shots_per_basis; ++s) {
      if (rng.bernoulli(p_plus)) {
        counts.basis[b].plus += 1;
      } else {
        counts.basis[b].minus += 1;
      }
    }
  }
  return counts;
}

linalg::ComplexMatrix linear_inversion(const TomographyCounts& counts) {
  std::array<double, 3> r{};
  for (int b = 0; b < 3; ++b) {
    const double total =
        static_cast<double>(counts.basis[b].plus + counts.basis[b].minus);
    if (total <= 0.0) {
      throw std::invalid_argument("tomography basis has no counts");
    }
    r[b] = (static_cast<double>(counts.basis[b].plus) -
            static_cast<double>(counts.basis[b].minus)) /
           total;
  }
  linalg::ComplexMatrix rho(2, 2);
  rho.at(0, 0) = 0.5 * (1.0 + r[2]);
  rho.at(0, 1) = linalg::cplx(0.5 * r[0], -0.5 * r[1]);
  rho.at(1, 0) = linalg::cplx(0.5 * r[0], 0.5 * r[1]);
  rho.at(1, 1) = 0.5 * (1.0 - r[2]);
  return rho;
}

quantum::DensityMatrix project_to_physical(const linalg::ComplexMatrix& rho_tilde) {
  if (rho_tilde.rows() != 2 || rho_tilde.cols() != 2) {
    throw std::invalid_argument("project_to_physical expects a 2x2 matrix");
  }
  if (!rho_tilde.is_hermitian(1e-10)) {
    throw std::invalid_argument("project_to_physical expects a Hermitian matrix");
  }
  if (std::abs(rho_tilde.at(0, 0).real() + rho_tilde.at(1, 1).real() - 1.0) > 1e-10) {
    throw std::invalid_argument("project_to_physical expects trace 1");
  }
  const auto eig = linalg::hermitian_eig(rho_tilde);
  std::array<double, 2> lambda{std::max(eig.eigenvalues[0], 0.0),
                               std::max(eig.eigenvalues[1], 0.0)};
  const double total = lambda[0] + lambda[1];
  if (total <= 0.0) throw std::runtime_error("projection collapsed to zero trace");
  lambda[0] /= total;
  lambda[1] /= total;
  std::array<linalg::cplx, 4> m{};
  for (int k = 0; k < 2; ++k) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        m[r * 2 + c] += lambda[k] * eig.eigenvectors.at(r, k) *
                        std::conj(eig.eigenvectors.at(c, k));
      }
    }
  }
  return quantum::DensityMatrix(m[0], m[1], m[2], m[3]);
}

quantum::DensityMatrix depolarize(const quantum::DensityMatrix& rho, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("depolarizing strength must be in [0, 1]");
  }
  return quantum::mix(quantum::DensityMatrix::maximally_mixed(), rho, lambda);
}

quantum::DensityMatrix reconstruct_stationary(const process::TransitionMatrix& t_hat,
                                              const ConditionalStates& states) {
  const auto d = process::stationary_distribution(t_hat);
  std::array<linalg::cplx, 4> acc{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double weight = d[i] * t_hat.at(i, j);
      if (weight == 0.0) continue;
      if (!states[i][j].has_value()) {
        throw std::invalid_argument(
            "missing reconstructed state for a feasible transition");
      }
      const auto& rho = *states[i][j];
      acc[0] += weight * rho.at(0, 0);
      acc[1] += weight * rho.at(0, 1);
      acc[2] += weight * rho.at(1, 0);
      acc[3] += weight * rho.at(1, 1);
    }
  }
  return quantum::DensityMatrix(acc[0], acc[1], acc[2], acc[3]);
}

quantum::DensityMatrix reconstruct_stationary(
    const process::TransitionMatrix& t_hat,
    const std::array<quantum::DensityMatrix, 3>& per_input) {
  const auto d = process::stationary_distribution(t_hat);
  std::array<linalg::cplx, 4> acc{};
  for (int i = 0; i < 3; ++i) {
    if (d[i] == 0.0) continue;
    acc[0] += d[i] * per_input[i].at(0, 0);
    acc[1] += d[i] * per_input[i].at(0, 1);
    acc[2] += d[i] * per_input[i].at(1, 0);
    acc[3] += d[i] * per_input[i].at(1, 1);
  }
  return quantum::DensityMatrix(acc[0], acc[1], acc[2], acc[3]);
}

ReconstructionReport verification_report(const process::ProcessParams& params,
                                         std::uint64_t shots, const NoiseModel& noise,
                                         std::uint64_t seed,
                                         TomographyConditioning conditioning,
                                         int bootstrap_resamples,
                                         std::vector<double>* bootstrap_values) {
  params.require_interior();
  noise.validate();
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (bootstrap_resamples < 2) {
    throw std::invalid_argument("bootstrap needs at least 2 resamples");
  }

  const Rng root(seed);
  const process::TransitionMatrix t = process::build_transition_matrix(params);

  ReconstructionReport report;
  report.params = params;
  report.seed = seed;
  report.shots = shots;
  report.noise = noise;
  report.conditioning = conditioning;
  report.bootstrap_resamples = bootstrap_resamples;
  report.c_mu_ideal = process::classical_complexity(params);
  report.c_q_ideal = quantum::quantum_complexity(params);

  // Conditional output statistics per input state.
  CountsTable counts;
  for (int i = 0; i < 3; ++i) {
    Rng counts_rng = root.stream(1).stream(static_cast<std::uint64_t>(i));
    counts.row[i] = simulate_counts(params, i, shots, noise, counts_rng);
  }

  // Tomography of the collapsed memory states.
  FrequencyPipelineInput estimation;
  std::vector<std::pair<std::pair<int, int>, TomographyCounts>> tomography;
  if (conditioning == TomographyConditioning::per_outcome) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (t.at(i, j) == 0.0) continue;
        const auto true_state =
            depolarize(ideal_pure_state(params, j), noise.depolarizing);
        Rng tomo_rng = root.stream(2)
                           .stream(static_cast<std::uint64_t>(i * 3 + j));
        TomographyCounts tc;
        for (int b = 0; b < 3; ++b) {
          Rng basis_rng = tomo_rng.stream(static_cast<std::uint64_t>(b));
          const auto one = simulate_tomography(true_state, shots, basis_rng);
          tc.basis[b] = one.basis[b];
        }
        tomography.push_back({{i, j}, tc});
      }
    }
  } else {
    for (int i = 0; i < 3; ++i) {
      const auto true_state = detected_input_mixture(
          params, detected_row(t, i, noise), noise.depolarizing);
      Rng tomo_rng = root.stream(3).stream(static_cast<std::uint64_t>(i));
      TomographyCounts tc;
      for (int b = 0; b < 3; ++b) {
        Rng basis_rng = tomo_rng.stream(static_cast<std::uint64_t>(b));
        const auto one = simulate_tomography(true_state, shots, basis_rng);
        tc.basis[b] = one.basis[b];
      }
      tomography.push_back({{i, -1}, tc});
    }
  }

  const auto t_hat = estimate_transition_matrix(counts);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      report.t_ideal[i][j] = t.at(i, j);
      estimation.frequencies[i][j] = t_hat.at(i, j);
    }
  }
  for (const auto& [key, tc] : tomography) {
    const auto state = reconstruct_from_counts(tc);
    if (key.second >= 0) {
      estimation.conditional[key.first][key.second] = state;
    } else {
      estimation.per_input[key.first] = state;
    }
  }

  const auto result = run_estimation(estimation, conditioning);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) report.t_estimated[i][j] = result.t_hat.at(i, j);
    const auto ideal_row = t.row(i);
    const auto est_row = result.t_hat.row(i);
    report.classical_fidelities[i] = quantum::classical_fidelity(est_row, ideal_row);
  }
  for (const auto& [key, tc] : tomography) {
    StateRecord record;
    record.input = key.first;
    record.output = key.second;
    const auto& state = key.second >= 0
                            ? *result.conditional[key.first][key.second]
                            : *result.per_input[key.first];
    record.bloch = state.bloch();
    const auto ideal = key.second >= 0
                           ? ideal_pure_state(params, key.second)
                           : ideal_input_mixture(params, t, key.first);
    record.fidelity = quantum::quantum_fidelity(state, ideal);
    report.states.push_back(record);
  }
  report.stationary_bloch = result.stationary.bloch();
  report.stationary_fidelity = quantum::quantum_fidelity(
      result.stationary, quantum::quantum_stationary_state(params));
  report.c_q_estimate = result.c_q;

  // Poissonian resampling of every recorded count.
  std::vector<double> resampled;
  resampled.reserve(static_cast<std::size_t>(bootstrap_resamples));
  for (int b = 0; b < bootstrap_resamples; ++b) {
    resampled.push_back(bootstrap_c_q(counts, tomography, conditioning,
                                      root.stream(4).stream(static_cast<std::uint64_t>(b))));
  }
  double mean = 0.0;
  for (double v : resampled) mean += v;
  mean /= static_cast<double>(resampled.size());
  double var = 0.0;
  for (double v : resampled) var += (v - mean) * (v - mean);
  var /= static_cast<double>(resampled.size() - 1);
  report.c_q_uncertainty = std::sqrt(var);
  if (bootstrap_values) *bootstrap_values = std::move(resampled);
  return report;
}

ReconstructionReport exact_pipeline_report(const process::ProcessParams& params,
                                           const NoiseModel& noise,
                                           TomographyConditioning conditioning) {
  params.require_interior();
  noise.validate();

  const process::TransitionMatrix t = process::build_transition_matrix(params);
  ReconstructionReport report;
  report.params = params;
  report.shots = 0;
  report.noise = noise;
  report.conditioning = conditioning;
  report.c_mu_ideal = process::classical_complexity(params);
  report.c_q_ideal = quantum::quantum_complexity(params);

  FrequencyPipelineInput estimation;
  std::vector<std::pair<std::pair<int, int>, quantum::DensityMatrix>> targets;
  for (int i = 0; i < 3; ++i) {
    estimation.frequencies[i] = detected_row(t, i, noise);
  }
  if (conditioning == TomographyConditioning::per_outcome) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (t.at(i, j) == 0.0) continue;
        const auto state =
            depolarize(ideal_pure_state(params, j), noise.depolarizing);
        estimation.conditional[i][j] = state;
        targets.push_back({{i, j}, state});
      }
    }
  } else {
    for (int i = 0; i < 3; ++i) {
      const auto state = detected_input_mixture(params, detected_row(t, i, noise),
                                                noise.depolarizing);
      estimation.per_input[i] = state;
      targets.push_back({{i, -1}, state});
    }
  }

  const auto result = run_estimation(estimation, conditioning);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      report.t_ideal[i][j] = t.at(i, j);
      report.t_estimated[i][j] = result.t_hat.at(i, j);
    }
    report.classical_fidelities[i] =
        quantum::classical_fidelity(result.t_hat.row(i), t.row(i));
  }
  for (const auto& [key, state] : targets) {
    StateRecord record;
    record.input = key.first;
    record.output = key.second;
    record.bloch = state.bloch();
    const auto ideal = key.second >= 0 ? ideal_pure_state(params, key.second)
                                       : ideal_input_mixture(params, t, key.first);
    record.fidelity = quantum::quantum_fidelity(state, ideal);
    report.states.push_back(record);
  }
  report.stationary_bloch = result.stationary.bloch();
  report.stationary_fidelity = quantum::quantum_fidelity(
      result.stationary, quantum::quantum_stationary_state(params));
  report.c_q_estimate = result.c_q;
  report.c_q_uncertainty = 0.0;
  report.bootstrap_resamples = 0;
  return report;
}

nlohmann::json report_to_json(const ReconstructionReport& report) {
  nlohmann::json j;
  j["params"] = {{"p", report.params.p}, {"q", report.params.q}};
  j["mode"] = report.shots == 0 ? "analytic" : "sampled";
  j["seed"] = report.seed;
  j["shots"] = report.shots;
  j["noise"] = {{"depolarizing", report.noise.depolarizing},
                {"efficiency", report.noise.efficiency}};
  j["tomography_conditioning"] = to_string(report.conditioning);
  j["bootstrap_resamples"] = report.bootstrap_resamples;
  j["transition_matrix_ideal"] = report.t_ideal;
  j["transition_matrix_estimated"] = report.t_estimated;
  j["classical_fidelities"] = report.classical_fidelities;
  j["conditional_states"] = nlohmann::json::array();
  for (const auto& s : report.states) {
    nlohmann::json entry = {{"input", s.input},
                            {"bloch", s.bloch},
                            {"fidelity", s.fidelity}};
    if (s.output >= 0) {
      entry["output"] = s.output;
    }
    j["conditional_states"].push_back(entry);
  }
  j["stationary_state"] = {{"bloch", report.stationary_bloch},
                           {"fidelity", report.stationary_fidelity}};
  j["c_mu_ideal"] = report.c_mu_ideal;
  j["c_q_ideal"] = report.c_q_ideal;
  j["c_q_estimate"] = report.c_q_estimate;
  j["c_q_uncertainty"] = report.c_q_uncertainty;
  return j;
}

}  // namespace epsim::harness
