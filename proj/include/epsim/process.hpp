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

#ifndef EPSIM_PROCESS_HPP
#define EPSIM_PROCESS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "epsim/linalg.hpp"
#include "epsim/rng.hpp"

namespace epsim::process {

/// The perturbed coin: a two-state chain that flips 0 -> 1 with
/// probability p and 1 -> 0 with probability q. The simulated process is
/// the coin's output string after relabeling every 0 that immediately
/// precedes a 1 as a 2.
struct ProcessParams {
  double p = 0.0;
  double q = 0.0;

  /// Both parameters strictly inside (0, 1). Required for the stationary
  /// distribution to be unique and the quantum causal states to be
  /// linearly independent.
  bool interior() const;

  /// Throws std::invalid_argument unless both parameters are in [0, 1].
  void validate() const;

  /// validate() plus interior(); complexity measures and stationary
  /// sampling are defined only on the open square.
  void require_interior() const;
};

/// Memory state of the optimal classical simulator; the label equals the
/// last emitted output symbol.
enum class CausalState : int { S0 = 0, S1 = 1, S2 = 2 };

inline CausalState causal_state_from_index(int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("causal state index out of range");
  return static_cast<CausalState>(i);
}

/// Row-stochastic 3x3 matrix; entry (i, j) is the probability of emitting
/// output j (and moving to causal state j) from causal state i. Outputs
/// 0 -> 1 from state 0, 2 -> 0 and 2 -> 2 never occur, so those entries
/// are exact zeros.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(const std::array<double, 9>& entries);

  double at(int i, int j) const { return entries_[i * 3 + j]; }
  std::array<double, 3> row(int i) const;
  std::span<const double> entries() const { return entries_; }

 private:
  std::array<double, 9> entries_;
};

/// Coin-state string over {0, 1}.
struct RawTrajectory {
  std::vector<std::uint8_t> symbols;
};

/// Process output string over {0, 1, 2}. A 0 is never immediately
/// followed by a 1: the relabeling would have turned that 0 into a 2.
struct OutputTrajectory {
  std::vector<std::uint8_t> symbols;
};

/// Exact distribution over the 3^length output words of a fixed length.
/// Words map to indices big-endian: the first emitted symbol is the most
/// significant base-3 digit.
struct WordDistribution {
  int length = 0;
  std::vector<double> prob;
};

std::size_t word_index(std::span<const int> symbols);
std::vector<int> word_symbols(std::size_t index, int length);

/// T rows: (1-p, 0, p), (q(1-p), 1-q, pq), (0, 1, 0).
TransitionMatrix build_transition_matrix(const ProcessParams& params);

/// Markov-chain sample of the raw coin, P(1|0) = p, P(0|1) = q.
RawTrajectory sample_raw_coin(const ProcessParams& params, std::size_t length,
                              int initial, Rng& rng);

/// Relabels raw symbols: 1 stays 1, a 0 followed by 1 becomes 2, a 0
/// followed by 0 stays 0. The final raw symbol is kept only when it is a
/// 1; a trailing 0 cannot be classified without the next coin state and
/// is dropped, so the output is one symbol shorter in that case.
OutputTrajectory post_process(const RawTrajectory& raw);

/// Last symbol of a non-empty history.
CausalState causal_state_of(const OutputTrajectory& history);

/// One transition of the classical machine: emits j with probability
/// T(state, j) and moves to causal state j.
std::pair<int, CausalState> classical_step(CausalState state,
                                           const TransitionMatrix& t, Rng& rng);

/// Fixed point pi T = pi. Equals (q(1-p), p, pq) / (p+q) on the open
/// square; boundary parameters raise when the fixed point is not unique.
linalg::ProbabilityVector stationary_distribution(const TransitionMatrix& t);

/// C_mu: Shannon entropy of the stationary causal-state distribution.
double classical_complexity(const ProcessParams& params);

/// Exact length-L word distribution by chain-rule enumeration over the
/// causal-state machine. No initial state means the stationary mixture.
/// L is capped at 8 (3^L storage).
WordDistribution classical_word_distribution(const ProcessParams& params,
                                             std::optional<CausalState> initial,
                                             int length);

/// log2(3): single-shot memory cost of the three-state classical machine.
double classical_max_entropy();

/// Iterated classical_step. No initial state means an initial draw from
/// the stationary distribution (interior parameters only). Stream use:
/// stream 0 of rng for the initial draw, stream 1 for the steps.
/// states_out, when given, receives the causal state after each emission.
OutputTrajectory run_classical_trajectory(const ProcessParams& params,
                                          std::optional<CausalState> initial,
                                          std::size_t steps, Rng& rng,
                                          std::vector<CausalState>* states_out = nullptr);

}  // namespace epsim::process

#endif
