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

#include <cmath>
#include <vector>

#include "epsim/linalg.hpp"
#include "epsim/process.hpp"
#include "epsim/rng.hpp"
#include "oracles.hpp"

using epsim::Rng;
using epsim::linalg::ComplexMatrix;
using epsim::linalg::cplx;
using epsim::linalg::ProbabilityVector;

namespace {

ComplexMatrix reconstruct(const epsim::linalg::HermitianEigenResult& eig) {
  const std::size_t n = eig.eigenvalues.size();
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        acc += eig.eigenvectors.at(r, k) * eig.eigenvalues[k] *
               std::conj(eig.eigenvectors.at(c, k));
      }
      m.at(r, c) = acc;
    }
  }
  return m;
}

double orthonormality_error(const ComplexMatrix& q) {
  return (q.adjoint() * q).max_abs_diff(ComplexMatrix::identity(q.cols()));
}

}  // namespace

TEST_CASE("hermitian_eig: 2x2 identity") {
  const auto eig = epsim::linalg::hermitian_eig(ComplexMatrix::identity(2));
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(orthonormality_error(eig.eigenvectors) <= 1e-10);
}

TEST_CASE("hermitian_eig: 2x2 closed form") {
  ComplexMatrix a(2, 2);
  a.at(0, 0) = 0.5;
  a.at(0, 1) = 0.25;
  a.at(1, 0) = 0.25;
  a.at(1, 1) = 0.5;
  const auto eig = epsim::linalg::hermitian_eig(a);
  CHECK(eig.eigenvalues[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(reconstruct(eig).max_abs_diff(a) <= 1e-10);
}

TEST_CASE("hermitian_eig: already-diagonal 3x3") {
  ComplexMatrix a(3, 3);
  a.at(0, 0) = 0.1;
  a.at(1, 1) = 0.2;
  a.at(2, 2) = 0.7;
  const auto eig = epsim::linalg::hermitian_eig(a);
  CHECK(eig.eigenvalues[0] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(eig.eigenvalues[2] == doctest::Approx(0.7).epsilon(1e-14));
  // Standard basis vectors, up to phase.
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(eig.eigenvectors.at(k, k)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("hermitian_eig: input validation") {
  ComplexMatrix skew(2, 2);
  skew.at(0, 1) = cplx(0.0, 1.0);
  skew.at(1, 0) = cplx(0.0, 1.0);  // conj would need -i
  CHECK_THROWS_AS(epsim::linalg::hermitian_eig(skew), std::invalid_argument);
  CHECK_THROWS_AS(epsim::linalg::hermitian_eig(ComplexMatrix::identity(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(epsim::linalg::hermitian_eig(ComplexMatrix::identity(9)),
                  std::invalid_argument);
}

TEST_CASE("hermitian_eig: 1000 random matrices, dims 2-6") {
  Rng rng(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 5.0);
    const auto a = epsim::oracles::random_hermitian(rng, n);
    const auto eig = epsim::linalg::hermitian_eig(a);
    REQUIRE(eig.eigenvalues.size() == n);
    for (std::size_t k = 1; k < n; ++k) {
      CHECK(eig.eigenvalues[k - 1] <= eig.eigenvalues[k]);
    }
    CHECK(reconstruct(eig).max_abs_diff(a) <= 1e-10);
    CHECK(orthonormality_error(eig.eigenvectors) <= 1e-10);
    double trace = 0.0;
    double lambda_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      trace += a.at(k, k).real();
      lambda_sum += eig.eigenvalues[k];
    }
    CHECK(std::abs(trace - lambda_sum) <= 1e-10);
  }
}

TEST_CASE("shannon_entropy: anchor values") {
  CHECK(epsim::linalg::shannon_entropy(ProbabilityVector({1.0, 0.0, 0.0})) == 0.0);
  CHECK(epsim::linalg::shannon_entropy(ProbabilityVector(
            {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0})) ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  CHECK(epsim::linalg::shannon_entropy(ProbabilityVector({0.25, 0.5, 0.25})) ==
        doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("probability vector validation") {
  CHECK_THROWS_AS(ProbabilityVector({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(ProbabilityVector({1.2, -0.2}), std::invalid_argument);
  CHECK_THROWS_AS(ProbabilityVector({}), std::invalid_argument);
  // Tiny negative weights are clamped, not rejected.
  const ProbabilityVector p({1.0 - 1e-13, 1e-13, -1e-13});
  CHECK(p[2] == 0.0);
}

TEST_CASE("shannon_entropy: permutation invariance and concavity") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    double a = rng.uniform(), b = rng.uniform(), c = rng.uniform();
    const double z = a + b + c;
    a /= z;
    b /= z;
    c /= z;
    const double base = epsim::linalg::shannon_entropy(ProbabilityVector({a, b, c}));
    CHECK(epsim::linalg::shannon_entropy(ProbabilityVector({c, a, b})) ==
          doctest::Approx(base).epsilon(1e-12));

    double d = rng.uniform(), e = rng.uniform(), f = rng.uniform();
    const double z2 = d + e + f;
    d /= z2;
    e /= z2;
    f /= z2;
    const double other = epsim::linalg::shannon_entropy(ProbabilityVector({d, e, f}));
    const double w = rng.uniform();
    const double mixed = epsim::linalg::shannon_entropy(ProbabilityVector(
        {w * a + (1 - w) * d, w * b + (1 - w) * e, w * c + (1 - w) * f}));
    CHECK(mixed >= w * base + (1 - w) * other - 1e-12);
  }
}

TEST_CASE("complete_to_unitary: canonical completions") {
  ComplexMatrix e0(2, 1);
  e0.at(0, 0) = 1.0;
  CHECK(epsim::linalg::complete_to_unitary(e0).max_abs_diff(
            ComplexMatrix::identity(2)) == 0.0);

  ComplexMatrix diag(2, 1);
  const double r = 1.0 / std::sqrt(2.0);
  diag.at(0, 0) = r;
  diag.at(1, 0) = r;
  const auto u = epsim::linalg::complete_to_unitary(diag);
  CHECK(std::abs(u.at(0, 1) - cplx(r, 0.0)) <= 1e-12);
  CHECK(std::abs(u.at(1, 1) - cplx(-r, 0.0)) <= 1e-12);
}

TEST_CASE("complete_to_unitary: rejects non-orthonormal columns") {
  ComplexMatrix bad(3, 2);
  bad.at(0, 0) = 1.0;
  bad.at(0, 1) = 1.0;  // same column twice
  CHECK_THROWS_AS(epsim::linalg::complete_to_unitary(bad), std::invalid_argument);
  CHECK_THROWS_AS(epsim::linalg::complete_to_unitary(ComplexMatrix::identity(3)),
                  std::invalid_argument);
}

TEST_CASE("complete_to_unitary: 1000 random isometries") {
  Rng rng(4321);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 5.0);
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * (n - 1));
    const auto v = epsim::oracles::random_isometry(rng, n, k);
    const auto u = epsim::linalg::complete_to_unitary(v);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < k; ++c) {
        CHECK(u.at(r, c) == v.at(r, c));  // copied verbatim
      }
    }
    CHECK((u.adjoint() * u).max_abs_diff(ComplexMatrix::identity(n)) <= 1e-10);
    CHECK((u * u.adjoint()).max_abs_diff(ComplexMatrix::identity(n)) <= 1e-10);
  }
}

TEST_CASE("stationary_fixed_point: coin anchors") {
  const auto t_mid = epsim::process::build_transition_matrix({0.5, 0.5});
  const auto pi_mid = epsim::linalg::stationary_fixed_point(t_mid.entries(), 3);
  CHECK(pi_mid[0] == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(pi_mid[1] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(pi_mid[2] == doctest::Approx(0.25).epsilon(1e-13));

  const auto t_skew = epsim::process::build_transition_matrix({0.3, 0.6});
  const auto pi_skew = epsim::linalg::stationary_fixed_point(t_skew.entries(), 3);
  CHECK(pi_skew[0] == doctest::Approx(0.42 / 0.9).epsilon(1e-12));
  CHECK(pi_skew[1] == doctest::Approx(0.3 / 0.9).epsilon(1e-12));
  CHECK(pi_skew[2] == doctest::Approx(0.18 / 0.9).epsilon(1e-12));
}

TEST_CASE("stationary_fixed_point: absorbing boundary still unique") {
  const auto t = epsim::process::build_transition_matrix({0.0, 0.5});
  const auto pi = epsim::linalg::stationary_fixed_point(t.entries(), 3);
  CHECK(pi[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(pi[1] == 0.0);
  CHECK(pi[2] == 0.0);
}

TEST_CASE("stationary_fixed_point: non-unique fixed point raises") {
  // p = q = 0 freezes the coin; states 0 and 1 are separate closed classes.
  const auto t = epsim::process::build_transition_matrix({0.0, 0.0});
  CHECK_THROWS_AS(epsim::linalg::stationary_fixed_point(t.entries(), 3),
                  std::runtime_error);
}

TEST_CASE("stationary_fixed_point: 1000 random interior coins vs power iteration") {
  Rng rng(777);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto params = epsim::oracles::random_interior_params(rng);
    const auto t = epsim::process::build_transition_matrix(params);
    const auto pi = epsim::linalg::stationary_fixed_point(t.entries(), 3);
    const auto oracle = epsim::oracles::power_iteration_stationary(t.entries(), 3);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(pi[j] - oracle[static_cast<std::size_t>(j)]) <= 1e-9);
    }
    // pi T = pi directly
    for (int j = 0; j < 3; ++j) {
      double image = 0.0;
      for (int i = 0; i < 3; ++i) image += pi[i] * t.at(i, j);
      CHECK(std::abs(image - pi[j]) <= 1e-12);
    }
  }
}

TEST_CASE("stationary_fixed_point: general stochastic matrices") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 4.0);
    const auto t = epsim::oracles::random_stochastic(rng, n);
    const auto pi = epsim::linalg::stationary_fixed_point(t, n);
    const auto oracle = epsim::oracles::power_iteration_stationary(t, n);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(std::abs(pi[j] - oracle[j]) <= 1e-9);
    }
  }
}
