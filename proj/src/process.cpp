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

#include "epsim/process.hpp"

#include <cmath>
#include <stdexcept>

namespace epsim::process {

namespace {

constexpr int kMaxWordLength = 8;

void enumerate_words(const TransitionMatrix& t, int state, int depth, int length,
                     double prob, std::size_t index, std::vector<double>& out) {
  if (depth == length) {
    out[index] += prob;
    return;
  }
  for (int j = 0; j < 3; ++j) {
    const double step = t.at(state, j);
    if (step == 0.0) continue;
    enumerate_words(t, j, depth + 1, length, prob * step, index * 3 + j, out);
  }
}

}  // namespace

bool ProcessParams::interior() const {
  return p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0;
}

void ProcessParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("process parameters must be probabilities in [0, 1]");
  }
}

void ProcessParams::require_interior() const {
  validate();
  if (!interior()) {
    throw std::invalid_argument(
        "process parameters must be strictly inside (0, 1) for this operation");
  }
}

TransitionMatrix::TransitionMatrix(const std::array<double, 9>& entries)
    : entries_(entries) {
  for (int i = 0; i < 3; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double e = entries_[i * 3 + j];
      if (!std::isfinite(e) || e < 0.0 || e > 1.0 + 1e-12) {
        throw std::invalid_argument("transition probability out of [0, 1]");
      }
      row_sum += e;
    }
    if (std::abs(row_sum - 1.0) > 1e-9) {
      throw std::invalid_argument("transition matrix row does not sum to 1");
    }
  }
}

std::array<double, 3> TransitionMatrix::row(int i) const {
  if (i < 0 || i > 2) throw std::invalid_argument("transition matrix row out of range");
  return {entries_[i * 3], entries_[i * 3 + 1], entries_[i * 3 + 2]};
}

std::size_t word_index(std::span<const int> symbols) {
  std::size_t index = 0;
  for (int s : symbols) {
    if (s < 0 || s > 2) throw std::invalid_argument("word symbol out of range");
    index = index * 3 + static_cast<std::size_t>(s);
  }
  return index;
}

std::vector<int> word_symbols(std::size_t index, int length) {
  std::vector<int> symbols(length, 0);
  for (int pos = length; pos-- > 0;) {
    symbols[pos] = static_cast<int>(index % 3);
    index /= 3;
  }
  return symbols;
}

TransitionMatrix build_transition_matrix(const ProcessParams& params) {
  params.validate();
  const double p = params.p;
  const double q = params.q;
  return TransitionMatrix({
      1.0 - p, 0.0, p,
      q * (1.0 - p), 1.0 - q, p * q,
      0.0, 1.0, 0.0,
  });
}

RawTrajectory sample_raw_coin(const ProcessParams& params, std::size_t length,
                              int initial, Rng& rng) {
  params.validate();
  if (length < 1) throw std::invalid_argument("raw trajectory length must be >= 1");
  if (initial != 0 && initial != 1) {
    throw std::invalid_argument("coin state must be 0 or 1");
  }
  RawTrajectory traj;
  traj.symbols.reserve(length);
  std::uint8_t coin = static_cast<std::uint8_t>(initial);
  traj.symbols.push_back(coin);
  for (std::size_t i = 1; i < length; ++i) {
    const double flip = coin == 0 ? params.p : params.q;
    if (rng.uniform() < flip) coin ^= 1;
    traj.symbols.push_back(coin);
  }
  return traj;
}

OutputTrajectory post_process(const RawTrajectory& raw) {
  const auto& r = raw.symbols;
  if (r.size() < 2) {
    throw std::invalid_argument("post_process needs at least two raw symbols");
  }
  OutputTrajectory out;
  out.symbols.reserve(r.size());
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (r[i] == 1) {
      out.symbols.push_back(1);
    } else {
      out.symbols.push_back(r[i + 1] == 1 ? 2 : 0);
    }
  }
  // A trailing 1 is already classified; a trailing 0 is not.
  if (r.back() == 1) out.symbols.push_back(1);
  return out;
}

CausalState causal_state_of(const OutputTrajectory& history) {
  if (history.symbols.empty()) {
    throw std::invalid_argument("causal state undefined for an empty history");
  }
  return causal_state_from_index(history.symbols.back());
}

std::pair<int, CausalState> classical_step(CausalState state,
                                           const TransitionMatrix& t, Rng& rng) {
  const auto row = t.row(static_cast<int>(state));
  const int j = static_cast<int>(rng.categorical(row));
  return {j, causal_state_from_index(j)};
}

linalg::ProbabilityVector stationary_distribution(const TransitionMatrix& t) {
  return linalg::stationary_fixed_point(t.entries(), 3);
}

double classical_complexity(const ProcessParams& params) {
  params.require_interior();
  return linalg::shannon_entropy(
      stationary_distribution(build_transition_matrix(params)));
}

WordDistribution classical_word_distribution(const ProcessParams& params,
                                             std::optional<CausalState> initial,
                                             int length) {
  if (length < 1 || length > kMaxWordLength) {
    throw std::invalid_argument("word length must be in [1, 8]");
  }
  const TransitionMatrix t = build_transition_matrix(params);
  WordDistribution dist;
  dist.length = length;
  dist.prob.assign(static_cast<std::size_t>(std::pow(3.0, length)), 0.0);
  if (initial.has_value()) {
    enumerate_words(t, static_cast<int>(*initial), 0, length, 1.0, 0, dist.prob);
  } else {
    const auto pi = stationary_distribution(t);
    for (int i = 0; i < 3; ++i) {
      if (pi[i] == 0.0) continue;
      enumerate_words(t, i, 0, length, pi[i], 0, dist.prob);
    }
  }
  return dist;
}

double classical_max_entropy() { return std::log2(3.0); }

OutputTrajectory run_classical_trajectory(const ProcessParams& params,
                                          std::optional<CausalState> initial,
                                          std::size_t steps, Rng& rng,
                                          std::vector<CausalState>* states_out) {
  if (steps < 1) throw std::invalid_argument("trajectory needs at least one step");
  const TransitionMatrix t = build_transition_matrix(params);
  CausalState state;
  Rng init_rng = rng.stream(0);
  Rng step_rng = rng.stream(1);
  if (initial.has_value()) {
    state = *initial;
  } else {
    params.require_interior();
    const auto pi = stationary_distribution(t);
    state = causal_state_from_index(
        static_cast<int>(init_rng.categorical(pi.weights())));
  }
  OutputTrajectory out;
  out.symbols.reserve(steps);
  if (states_out) states_out->reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    auto [symbol, next] = classical_step(state, t, step_rng);
    out.symbols.push_back(static_cast<std::uint8_t>(symbol));
    if (states_out) states_out->push_back(next);
    state = next;
  }
  return out;
}

}  // namespace epsim::process
