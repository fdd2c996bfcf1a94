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

// Test-only reference implementations. These stay independent of the
// library code paths they check: brute-force enumeration, power
// iteration, and closed forms instead of the production solvers.

#ifndef EPSIM_TESTS_ORACLES_HPP
#define EPSIM_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "epsim/linalg.hpp"
#include "epsim/process.hpp"
#include "epsim/quantum.hpp"
#include "epsim/rng.hpp"

namespace epsim::oracles {

/// Stationary distribution by plain power iteration from the uniform
/// start; independent of the linear-system solver.
inline std::vector<double> power_iteration_stationary(std::span<const double> t,
                                                      std::size_t n,
                                                      int iterations = 10000) {
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += pi[i] * t[i * n + j];
      next[j] = acc;
    }
    double total = 0.0;
    for (double w : next) total += w;
    for (std::size_t j = 0; j < n; ++j) pi[j] = next[j] / total;
  }
  return pi;
}

/// Closed-form stationary distribution of the post-processed coin,
/// (q(1-p), p, pq) / (p+q).
inline std::vector<double> closed_form_stationary(const process::ProcessParams& params) {
  const double p = params.p;
  const double q = params.q;
  const double z = p + q;
  return {q * (1.0 - p) / z, p / z, p * q / z};
}

/// Word distribution by exhaustive enumeration of raw coin words under the
/// stationary chain, pushed through post_process, conditioned on the
/// previous output symbol (the causal state). Independent of the
/// transition matrix and of both simulator engines: the only production
/// code touched is post_process itself.
inline std::vector<double> raw_enumeration_word_distribution(
    const process::ProcessParams& params, std::optional<int> initial, int length) {
  const double p = params.p;
  const double q = params.q;
  const std::array<double, 2> pi_raw{q / (p + q), p / (p + q)};
  // raw[k] -> raw[k+1] chain probabilities
  const auto chain = [&](int from, int to) {
    if (from == 0) return to == 1 ? p : 1.0 - p;
    return to == 0 ? q : 1.0 - q;
  };

  const int raw_len = length + 2;  // one symbol of history + lookahead
  const std::size_t word_count = static_cast<std::size_t>(std::pow(3.0, length));
  std::vector<double> dist(word_count, 0.0);
  double kept_mass = 0.0;

  for (std::uint64_t bits = 0; bits < (1ULL << raw_len); ++bits) {
    process::RawTrajectory raw;
    double prob = 0.0;
    for (int k = 0; k < raw_len; ++k) {
      const int symbol = static_cast<int>((bits >> k) & 1ULL);
      if (k == 0) {
        prob = pi_raw[static_cast<std::size_t>(symbol)];
      } else {
        prob *= chain(raw.symbols.back(), symbol);
      }
      raw.symbols.push_back(static_cast<std::uint8_t>(symbol));
    }
    if (prob == 0.0) continue;
    const auto outputs = process::post_process(raw).symbols;
    // outputs[0] is the symbol that fixes the causal state; outputs[1..
    // length] are the emitted word.
    if (initial.has_value() && outputs[0] != *initial) continue;
    std::size_t index = 0;
    for (int k = 1; k <= length; ++k) index = index * 3 + outputs[static_cast<std::size_t>(k)];
    dist[index] += prob;
    kept_mass += prob;
  }
  for (double& w : dist) w /= kept_mass;
  return dist;
}

/// Random Hermitian matrix with every entry magnitude at most 1.
inline linalg::ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  linalg::ComplexMatrix m(n, n);
  const double off_scale = 1.0 / std::sqrt(2.0);
  for (std::size_t r = 0; r < n; ++r) {
    m.at(r, r) = 2.0 * rng.uniform() - 1.0;
    for (std::size_t c = r + 1; c < n; ++c) {
      const linalg::cplx z(off_scale * (2.0 * rng.uniform() - 1.0),
                           off_scale * (2.0 * rng.uniform() - 1.0));
      m.at(r, c) = z;
      m.at(c, r) = std::conj(z);
    }
  }
  return m;
}

/// Random n x k isometry by modified Gram-Schmidt over random complex
/// columns (test-side orthonormalization, distinct from the library's
/// basis completion).
inline linalg::ComplexMatrix random_isometry(Rng& rng, std::size_t n, std::size_t k) {
  linalg::ComplexMatrix v(n, k);
  for (std::size_t c = 0; c < k; ++c) {
    while (true) {
      std::vector<linalg::cplx> col(n);
      for (auto& z : col) z = {2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t prev = 0; prev < c; ++prev) {
          linalg::cplx overlap(0.0, 0.0);
          for (std::size_t i = 0; i < n; ++i) overlap += std::conj(v.at(i, prev)) * col[i];
          for (std::size_t i = 0; i < n; ++i) col[i] -= overlap * v.at(i, prev);
        }
      }
      double norm = 0.0;
      for (const auto& z : col) norm += std::norm(z);
      norm = std::sqrt(norm);
      if (norm < 1e-3) continue;  // nearly dependent draw, retry
      for (std::size_t i = 0; i < n; ++i) v.at(i, c) = col[i] / norm;
      break;
    }
  }
  return v;
}

/// Random row-stochastic matrix with strictly positive entries.
inline std::vector<double> random_stochastic(Rng& rng, std::size_t n) {
  std::vector<double> t(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      t[i * n + j] = 0.05 + rng.uniform();
      total += t[i * n + j];
    }
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] /= total;
  }
  return t;
}

/// Qubit fidelity closed form: F^2 = Tr(rho sigma) + 2 sqrt(det rho det sigma).
inline double qubit_fidelity_closed_form(const quantum::DensityMatrix& rho,
                                         const quantum::DensityMatrix& sigma) {
  const auto tr_product =
      rho.at(0, 0) * sigma.at(0, 0) + rho.at(0, 1) * sigma.at(1, 0) +
      rho.at(1, 0) * sigma.at(0, 1) + rho.at(1, 1) * sigma.at(1, 1);
  const auto det = [](const quantum::DensityMatrix& m) {
    return (m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0)).real();
  };
  const double f2 = tr_product.real() +
                    2.0 * std::sqrt(std::max(det(rho), 0.0) * std::max(det(sigma), 0.0));
  return std::sqrt(std::max(f2, 0.0));
}

/// Uniform parameter draw from the open square, kept away from the edges.
inline process::ProcessParams random_interior_params(Rng& rng, double margin = 1e-3) {
  return {margin + (1.0 - 2.0 * margin) * rng.uniform(),
          margin + (1.0 - 2.0 * margin) * rng.uniform()};
}

}  // namespace epsim::oracles

#endif
