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

#ifndef EPSIM_HARNESS_HPP
#define EPSIM_HARNESS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epsim/linalg.hpp"
#include "epsim/process.hpp"
#include "epsim/quantum.hpp"
#include "epsim/rng.hpp"

#include <nlohmann/json_fwd.hpp>

namespace epsim::harness {

/// Coarse imperfection model: depolarizing noise on the collapsed memory
/// qubit plus a static detection efficiency per output channel.
struct NoiseModel {
  double depolarizing = 0.0;
  std::array<double, 3> efficiency{1.0, 1.0, 1.0};

  void validate() const;
  bool is_noiseless() const;
};

/// Detected-output counts for one input causal state.
struct CountsRow {
  std::array<std::uint64_t, 3> n{};

  std::uint64_t total() const { return n[0] + n[1] + n[2]; }
};

/// Counts for all three input causal states.
struct CountsTable {
  std::array<CountsRow, 3> row{};
};

/// Pauli-basis measurement record for one reconstructed state; bases are
/// ordered X, Y, Z.
struct BasisCounts {
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
};

struct TomographyCounts {
  std::array<BasisCounts, 3> basis{};
};

/// Whether tomography is conditioned on the input state only, or on the
/// (input, outcome) pair.
enum class TomographyConditioning { per_input, per_outcome };

std::string to_string(TomographyConditioning c);

/// Draws `shots` outputs for one input causal state. Channel efficiencies
/// reweight the transition row (and the row is renormalized), emulating
/// detection bias; every shot still lands in some channel.
CountsRow simulate_counts(const process::ProcessParams& params, int input,
                          std::uint64_t shots, const NoiseModel& noise, Rng& rng);

/// Row-wise relative frequencies. Throws on an empty row.
process::TransitionMatrix estimate_transition_matrix(const CountsTable& counts);

/// Simulated Pauli tomography: per basis, `shots_per_basis` outcomes with
/// P(+) = (1 + r_b) / 2 from the state's Bloch components.
TomographyCounts simulate_tomography(const quantum::DensityMatrix& state,
                                     std::uint64_t shots_per_basis, Rng& rng);

/// Linear-inversion estimate (I + sum_b r_hat_b sigma_b) / 2. Hermitian
/// and trace-1 by construction, but finite statistics can push it outside
/// the physical set.
linalg::ComplexMatrix linear_inversion(const TomographyCounts& counts);

/// Clips negative eigenvalues to zero and renormalizes the trace;
/// idempotent on physical states.
quantum::DensityMatrix project_to_physical(const linalg::ComplexMatrix& rho_tilde);

/// (1 - lambda) rho + lambda I/2.
quantum::DensityMatrix depolarize(const quantum::DensityMatrix& rho, double lambda);

/// Conditional reconstructed states keyed by (input, outcome); entries for
/// infeasible transitions stay empty.
using ConditionalStates =
    std::array<std::array<std::optional<quantum::DensityMatrix>, 3>, 3>;

/// Stationary-state assembly rho = sum_i d_i sum_j That_ij rho_{j|i} with
/// d the stationary fixed point of That. Every (i, j) with That_ij > 0
/// must carry a state.
quantum::DensityMatrix reconstruct_stationary(const process::TransitionMatrix& t_hat,
                                              const ConditionalStates& states);

/// Outcome-independent form: rho = sum_i d_i rho_i.
quantum::DensityMatrix reconstruct_stationary(
    const process::TransitionMatrix& t_hat,
    const std::array<quantum::DensityMatrix, 3>& per_input);

/// One reconstructed memory state and its fidelity against the ideal
/// counterpart. output is -1 when conditioning is per input only.
struct StateRecord {
  int input = 0;
  int output = -1;
  std::array<double, 3> bloch{};
  double fidelity = 0.0;
};

/// Full verification result: estimated transition matrix, reconstructed
/// states, fidelities, and the quantum complexity estimate with a
/// parametric bootstrap uncertainty.
struct ReconstructionReport {
  process::ProcessParams params;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;  // 0 marks the analytic (infinite-shot) pipeline
  NoiseModel noise;
  TomographyConditioning conditioning = TomographyConditioning::per_outcome;
  int bootstrap_resamples = 0;

  std::array<std::array<double, 3>, 3> t_ideal{};
  std::array<std::array<double, 3>, 3> t_estimated{};
  std::array<double, 3> classical_fidelities{};
  std::vector<StateRecord> states;
  std::array<double, 3> stationary_bloch{};
  double stationary_fidelity = 0.0;

  double c_mu_ideal = 0.0;
  double c_q_ideal = 0.0;
  double c_q_estimate = 0.0;
  double c_q_uncertainty = 0.0;
};

/// Runs the sampled pipeline: counts -> That, tomography -> conditional
/// states, stationary assembly, fidelities, and a B-resample Poissonian
/// bootstrap of the complexity estimate.
///
/// Stream layout under the root seed: counts use stream(1).stream(i);
/// tomography uses stream(2).stream(3i+j).stream(basis) (outcome
/// conditioning) or stream(3).stream(i).stream(basis) (input
/// conditioning); bootstrap resample b uses stream(4).stream(b).
/// bootstrap_values, when given, receives the resampled estimates.
ReconstructionReport verification_report(
    const process::ProcessParams& params, std::uint64_t shots,
    const NoiseModel& noise, std::uint64_t seed,
    TomographyConditioning conditioning = TomographyConditioning::per_outcome,
    int bootstrap_resamples = 200, std::vector<double>* bootstrap_values = nullptr);

/// Infinite-shot limit of the same pipeline: analytic detection
/// frequencies and Bloch vectors flow through the identical estimation
/// path, with no sampling and no bootstrap.
ReconstructionReport exact_pipeline_report(
    const process::ProcessParams& params, const NoiseModel& noise,
    TomographyConditioning conditioning = TomographyConditioning::per_outcome);

nlohmann::json report_to_json(const ReconstructionReport& report);

}  // namespace epsim::harness

#endif
