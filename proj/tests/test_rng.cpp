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

#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>

#include "epsim/rng.hpp"

using epsim::Rng;

TEST_CASE("rng: reproducible and seed-sensitive") {
  Rng a(5), b(5), c(6);
  for (int i = 0; i < 100; ++i) {
    const double draw = a.uniform();
    CHECK(draw == b.uniform());
    CHECK(draw >= 0.0);
    CHECK(draw < 1.0);
  }
  bool any_difference = false;
  Rng a2(5);
  for (int i = 0; i < 100; ++i) {
    any_difference = any_difference || a2.uniform() != c.uniform();
  }
  CHECK(any_difference);
}

TEST_CASE("rng: streams are draw-independent and distinct") {
  Rng root(42);
  Rng before = root.stream(7);
  root.uniform();
  root.uniform();
  Rng after = root.stream(7);
  for (int i = 0; i < 50; ++i) {
    CHECK(before.uniform() == after.uniform());
  }
  Rng other = root.stream(8);
  bool differs = false;
  Rng again = root.stream(7);
  for (int i = 0; i < 50; ++i) {
    differs = differs || again.uniform() != other.uniform();
  }
  CHECK(differs);
}

TEST_CASE("rng: uniform sample mean") {
  Rng rng(11);
  double total = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) total += rng.uniform();
  CHECK(std::abs(total / n - 0.5) <= 0.005);
}

TEST_CASE("rng: categorical frequencies and guards") {
  Rng rng(12);
  const std::array<double, 3> weights{0.2, 0.5, 0.3};
  std::array<double, 3> histogram{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) histogram[rng.categorical(weights)] += 1.0;
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(histogram[static_cast<std::size_t>(j)] / n -
                   weights[static_cast<std::size_t>(j)]) <= 0.01);
  }
  // Zero-weight outcomes never fire.
  const std::array<double, 3> spiked{0.0, 1.0, 0.0};
  for (int i = 0; i < 1000; ++i) CHECK(rng.categorical(spiked) == 1);
  const std::array<double, 2> negative{1.2, -0.2};
  CHECK_THROWS_AS(rng.categorical(negative), std::invalid_argument);
}

TEST_CASE("rng: poisson moments on both sampler branches") {
  for (const double mean : {0.5, 4.0, 25.0, 40000.0}) {
    Rng rng(13);
    const int n = mean > 1000.0 ? 20000 : 100000;
    double total = 0.0, total_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(rng.poisson(mean));
      total += k;
      total_sq += k * k;
    }
    const double sample_mean = total / n;
    const double sample_var = total_sq / n - sample_mean * sample_mean;
    CHECK(std::abs(sample_mean - mean) <= 5.0 * std::sqrt(mean / n));
    CHECK(std::abs(sample_var / mean - 1.0) <= 0.1);
  }
  Rng rng(14);
  CHECK(rng.poisson(0.0) == 0);
  CHECK_THROWS_AS(rng.poisson(-1.0), std::invalid_argument);
}

TEST_CASE("rng: poisson distribution shape against the exact pmf") {
  for (const double mean : {12.0, 50.0}) {
    Rng rng(15);
    const int n = 100000;
    const std::size_t bins = static_cast<std::size_t>(mean + 8.0 * std::sqrt(mean));
    std::vector<double> histogram(bins + 1, 0.0);
    for (int i = 0; i < n; ++i) {
      const std::uint64_t k = rng.poisson(mean);
      if (k <= bins) histogram[k] += 1.0;
    }
    double total_variation = 0.0;
    double pmf = std::exp(-mean);  // k = 0 term, then the usual recurrence
    for (std::size_t k = 0; k <= bins; ++k) {
      if (k > 0) pmf *= mean / static_cast<double>(k);
      total_variation += std::abs(histogram[k] / n - pmf);
    }
    CHECK(total_variation <= 0.05);
  }
}
