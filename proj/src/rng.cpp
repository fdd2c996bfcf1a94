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

#include "epsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace epsim {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

std::uint64_t derive(std::uint64_t seed, std::uint64_t id) {
  std::uint64_t state = seed + id * 0x9E3779B97F4A7C15ULL;
  std::uint64_t a = splitmix64(state);
  std::uint64_t b = splitmix64(state);
  return a ^ (b << 1);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(derive(seed, 0)) {}

Rng Rng::stream(std::uint64_t id) const { return Rng(derive(seed_, id + 1)); }

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::categorical(std::span<const double> weights) {
  if (weights.empty()) throw std::invalid_argument("categorical: no weights");
  const double u = uniform();
  double cumulative = 0.0;
  std::size_t selected = weights.size();
  std::size_t last_nonzero = 0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] < 0.0) throw std::invalid_argument("categorical: negative weight");
    if (weights[j] > 0.0) last_nonzero = j;
    cumulative += weights[j];
    if (selected == weights.size() && u < cumulative) selected = j;
  }
  // u can land in the rounding slack above the final cumulative sum.
  return selected == weights.size() ? last_nonzero : selected;
}

bool Rng::bernoulli(double prob) { return uniform() < prob; }

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson: mean must be finite and non-negative");
  }
  if (mean == 0.0) return 0;
  if (mean < 10.0) {
    // Knuth: count uniforms until their product drops below exp(-mean).
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double product = uniform();
    while (product > limit) {
      ++k;
      product *= uniform();
    }
    return k;
  }
  // PTRS transformed rejection (Hormann 1993), exact for mean >= 10.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  while (true) {
    double u = uniform() - 0.5;
    double v = uniform();
    double us = 0.5 - std::abs(u);
    double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    double rhs = k * log_mean - mean - std::lgamma(k + 1.0);
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <= rhs) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace epsim
