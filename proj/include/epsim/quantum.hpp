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

#ifndef EPSIM_QUANTUM_HPP
#define EPSIM_QUANTUM_HPP

#include <array>
#include <complex>
#include <optional>
#include <utility>

#include "epsim/linalg.hpp"
#include "epsim/process.hpp"
#include "epsim/rng.hpp"

namespace epsim::quantum {

using linalg::cplx;

/// Memory qubit state vector; unit norm within 1e-12.
struct QubitState {
  std::array<cplx, 2> amp{};

  double norm() const;
  void validate() const;
};

/// Three-level state vector; unit norm within 1e-12.
struct QutritState {
  std::array<cplx, 3> amp{};

  double norm() const;
  void validate() const;
};

/// State of (output qutrit) tensor (memory qubit). Basis ordering is
/// qutrit-major throughout: amplitude index = 2*j + m for qutrit level j
/// and qubit level m.
struct JointState {
  std::array<cplx, 6> amp{};

  double norm() const;
  void validate() const;
};

/// 2x2 density operator: Hermitian, trace 1, eigenvalues >= -1e-10.
class DensityMatrix {
 public:
  DensityMatrix(cplx m00, cplx m01, cplx m10, cplx m11);

  static DensityMatrix from_pure(const QubitState& psi);
  static DensityMatrix from_bloch(double x, double y, double z);
  static DensityMatrix maximally_mixed();

  cplx at(int r, int c) const { return m_[r * 2 + c]; }
  linalg::ComplexMatrix matrix() const;

  /// Bloch components (x, y, z) with rho = (I + r . sigma) / 2.
  std::array<double, 3> bloch() const;

  /// Ascending eigenvalue pair.
  std::array<double, 2> eigenvalues() const;

 private:
  std::array<cplx, 4> m_;
};

/// Convex combination weight_a * a + (1 - weight_a) * b.
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double weight_a);

/// One simulation step as an isometry from the memory qubit into
/// (output qutrit) tensor (next memory qubit): V |S_i> =
/// sum_j sqrt(T_ij) |j> |S_j>. Columns are the images of |0> and |1>.
class StepIsometry {
 public:
  explicit StepIsometry(linalg::ComplexMatrix m);

  const linalg::ComplexMatrix& matrix() const { return m_; }
  JointState apply(const QubitState& psi) const;

 private:
  linalg::ComplexMatrix m_;  // 6x2
};

/// Qubit encodings of the causal states: |S_0> = |0>,
/// |S_1> = sqrt(q)|0> + sqrt(1-q)|1>, |S_2> = |1>.
QubitState encode_causal_qubit(const process::ProcessParams& params, int i);

/// Qutrit encodings: |S'_0> = sqrt(1-p)|0> + sqrt(p)|2>,
/// |S'_1> = sqrt(q(1-p))|0> + sqrt(1-q)|1> + sqrt(pq)|2>, |S'_2> = |1>.
QutritState encode_causal_qutrit(const process::ProcessParams& params, int i);

/// 3x2 fan-out isometry with F |S_i> = |S'_i> for every i. The first
/// column is (sqrt(1-p), 0, sqrt(p)), the second (0, 1, 0); only p enters
/// the construction.
linalg::ComplexMatrix fanout_isometry(const process::ProcessParams& params);

/// The 6x2 step isometry, fixed by linear extension from
/// V|0> = sqrt(1-p)|0>|S_0> + sqrt(p)|2>|S_2> and V|1> = |1>|S_1>.
StepIsometry step_isometry(const process::ProcessParams& params);

/// 6x6 unitary on (qutrit tensor ancilla qubit) that reproduces the step
/// isometry on the subspace prepared with ancilla |0> after fan-out:
/// U (F|S_i> tensor |0>) = V |S_i>. Action outside that subspace follows
/// the deterministic Gram-Schmidt completion.
linalg::ComplexMatrix full_unitary(const process::ProcessParams& params);

/// Branch probabilities P(j) = || (<j| tensor I) V |psi> ||^2.
std::array<double, 3> measurement_probabilities(const StepIsometry& v,
                                                const QubitState& psi);

/// Renormalized memory state after outcome j; throws on a zero-probability
/// branch.
QubitState collapsed_state(const StepIsometry& v, const QubitState& psi, int outcome);

/// Samples the qutrit measurement and collapses the memory.
std::pair<int, QubitState> apply_and_measure(const QubitState& memory,
                                             const StepIsometry& v, Rng& rng);

/// Iterated apply_and_measure. No initial index means a stationary draw
/// (interior parameters only). Stream use matches the classical runner:
/// stream 0 for the initial draw, stream 1 for the steps. states_out,
/// when given, receives the causal-state label after each emission.
process::OutputTrajectory run_quantum_trajectory(
    const process::ProcessParams& params, std::optional<int> initial,
    std::size_t steps, Rng& rng,
    std::vector<process::CausalState>* states_out = nullptr);

/// Exact length-L word distribution by branch enumeration over measurement
/// outcomes; agrees with the classical chain-rule enumeration.
process::WordDistribution quantum_word_distribution(
    const process::ProcessParams& params, std::optional<int> initial, int length);

/// rho = sum_i pi_i |S_i><S_i| over the stationary distribution.
DensityMatrix quantum_stationary_state(const process::ProcessParams& params);

/// Von Neumann entropy in bits; eigenvalues in [-1e-10, 0) are clamped to
/// zero before taking logs.
double von_neumann_entropy(const DensityMatrix& rho);

/// C_Q = -Tr(rho log2 rho) of the stationary state; at most 1 bit.
double quantum_complexity(const process::ProcessParams& params);

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), non-squared.
double quantum_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Bhattacharyya coefficient sum_i sqrt(p_i q_i).
double classical_fidelity(std::span<const double> p, std::span<const double> q);

/// 1 bit: single-shot memory cost of the qubit machine.
double quantum_max_entropy();

}  // namespace epsim::quantum

#endif
