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

#include "epsim/quantum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace epsim::quantum {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kDensityTol = 1e-10;

template <std::size_t N>
double vector_norm(const std::array<cplx, N>& amp) {
  double s = 0.0;
  for (const cplx& z : amp) s += std::norm(z);
  return std::sqrt(s);
}

template <std::size_t N>
void check_normalized(const std::array<cplx, N>& amp, const char* what) {
  for (const cplx& z : amp) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument(std::string(what) + ": amplitude is not finite");
    }
  }
  if (std::abs(vector_norm(amp) - 1.0) > kNormTol) {
    throw std::invalid_argument(std::string(what) + ": state is not normalized");
  }
}

void check_causal_index(int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("causal state index out of range");
}

void enumerate_branches(const StepIsometry& v, const QubitState& psi, int depth,
                        int length, double prob, std::size_t index,
                        std::vector<double>& out) {
  if (depth == length) {
    out[index] += prob;
    return;
  }
  const JointState joint = v.apply(psi);
  for (int j = 0; j < 3; ++j) {
    const double pj =
        std::norm(joint.amp[2 * j]) + std::norm(joint.amp[2 * j + 1]);
    if (pj == 0.0) continue;
    const double root = std::sqrt(pj);
    QubitState branch{{joint.amp[2 * j] / root, joint.amp[2 * j + 1] / root}};
    enumerate_branches(v, branch, depth + 1, length, prob * pj, index * 3 + j, out);
  }
}

}  // namespace

double QubitState::norm() const { return vector_norm(amp); }
void QubitState::validate() const { check_normalized(amp, "qubit"); }

double QutritState::norm() const { return vector_norm(amp); }
void QutritState::validate() const { check_normalized(amp, "qutrit"); }

double JointState::norm() const { return vector_norm(amp); }
void JointState::validate() const { check_normalized(amp, "joint state"); }

DensityMatrix::DensityMatrix(cplx m00, cplx m01, cplx m10, cplx m11)
    : m_{m00, m01, m10, m11} {
  for (const cplx& z : m_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("density matrix entry is not finite");
    }
  }
  if (std::abs(m00.imag()) > kDensityTol || std::abs(m11.imag()) > kDensityTol ||
      std::abs(m01 - std::conj(m10)) > kDensityTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(m00.real() + m11.real() - 1.0) > kDensityTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  if (eigenvalues()[0] < -kDensityTol) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const QubitState& psi) {
  psi.validate();
  return DensityMatrix(psi.amp[0] * std::conj(psi.amp[0]),
                       psi.amp[0] * std::conj(psi.amp[1]),
                       psi.amp[1] * std::conj(psi.amp[0]),
                       psi.amp[1] * std::conj(psi.amp[1]));
}

DensityMatrix DensityMatrix::from_bloch(double x, double y, double z) {
  return DensityMatrix(cplx(0.5 * (1.0 + z), 0.0), cplx(0.5 * x, -0.5 * y),
                       cplx(0.5 * x, 0.5 * y), cplx(0.5 * (1.0 - z), 0.0));
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(0.5, 0.0, 0.0, 0.5);
}

linalg::ComplexMatrix DensityMatrix::matrix() const {
  linalg::ComplexMatrix m(2, 2);
  m.at(0, 0) = m_[0];
  m.at(0, 1) = m_[1];
  m.at(1, 0) = m_[2];
  m.at(1, 1) = m_[3];
  return m;
}

std::array<double, 3> DensityMatrix::bloch() const {
  return {2.0 * m_[1].real(), -2.0 * m_[1].imag(), m_[0].real() - m_[3].real()};
}

std::array<double, 2> DensityMatrix::eigenvalues() const {
  const double a = m_[0].real();
  const double d = m_[3].real();
  const double radius = std::hypot(0.5 * (a - d), std::abs(m_[1]));
  const double mid = 0.5 * (a + d);
  return {mid - radius, mid + radius};
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double weight_a) {
  if (!(weight_a >= 0.0 && weight_a <= 1.0)) {
    throw std::invalid_argument("mixing weight must be in [0, 1]");
  }
  const double wb = 1.0 - weight_a;
  return DensityMatrix(weight_a * a.at(0, 0) + wb * b.at(0, 0),
                       weight_a * a.at(0, 1) + wb * b.at(0, 1),
                       weight_a * a.at(1, 0) + wb * b.at(1, 0),
                       weight_a * a.at(1, 1) + wb * b.at(1, 1));
}

StepIsometry::StepIsometry(linalg::ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != 6 || m_.cols() != 2) {
    throw std::invalid_argument("step isometry must be 6x2");
  }
  m_.check_finite();
  if ((m_.adjoint() * m_).max_abs_diff(linalg::ComplexMatrix::identity(2)) >
      kNormTol) {
    throw std::invalid_argument("step isometry columns are not orthonormal");
  }
}

JointState StepIsometry::apply(const QubitState& psi) const {
  JointState joint;
  for (int r = 0; r < 6; ++r) {
    joint.amp[r] = m_.at(r, 0) * psi.amp[0] + m_.at(r, 1) * psi.amp[1];
  }
  return joint;
}

QubitState encode_causal_qubit(const process::ProcessParams& params, int i) {
  params.validate();
  check_causal_index(i);
  switch (i) {
    case 0:
      return QubitState{{1.0, 0.0}};
    case 1:
      return QubitState{{std::sqrt(params.q), std::sqrt(1.0 - params.q)}};
    default:
      return QubitState{{0.0, 1.0}};
  }
}

QutritState encode_causal_qutrit(const process::ProcessParams& params, int i) {
  params.validate();
  check_causal_index(i);
  const double p = params.p;
  const double q = params.q;
  switch (i) {
    case 0:
      return QutritState{{std::sqrt(1.0 - p), 0.0, std::sqrt(p)}};
    case 1:
      return QutritState{
          {std::sqrt(q * (1.0 - p)), std::sqrt(1.0 - q), std::sqrt(p * q)}};
    default:
      return QutritState{{0.0, 1.0, 0.0}};
  }
}

linalg::ComplexMatrix fanout_isometry(const process::ProcessParams& params) {
  params.validate();
  linalg::ComplexMatrix f(3, 2);
  f.at(0, 0) = std::sqrt(1.0 - params.p);
  f.at(2, 0) = std::sqrt(params.p);
  f.at(1, 1) = 1.0;
  return f;
}

StepIsometry step_isometry(const process::ProcessParams& params) {
  params.validate();
  const double p = params.p;
  const double q = params.q;
  linalg::ComplexMatrix v(6, 2);
  // V|0> = sqrt(1-p) |0>|S_0> + sqrt(p) |2>|S_2>
  v.at(0, 0) = std::sqrt(1.0 - p);
  v.at(5, 0) = std::sqrt(p);
  // V|1> = |1>|S_1>
  v.at(2, 1) = std::sqrt(q);
  v.at(3, 1) = std::sqrt(1.0 - q);
  return StepIsometry(std::move(v));
}

linalg::ComplexMatrix full_unitary(const process::ProcessParams& params) {
  // Input basis (qutrit tensor ancilla) and output basis (qutrit tensor
  // memory) share the qutrit-major index 2*level + bit. The prepared
  // ancilla is |0>, so the constraint subspace is E F with E|c> = |c>|0>.
  const linalg::ComplexMatrix f = fanout_isometry(params);
  const StepIsometry v = step_isometry(params);
  linalg::ComplexMatrix embedded(6, 2);
  for (int c = 0; c < 2; ++c) {
    for (int r = 0; r < 3; ++r) {
      embedded.at(2 * r, c) = f.at(r, c);
    }
  }
  const linalg::ComplexMatrix input_frame = linalg::complete_to_unitary(embedded);
  const linalg::ComplexMatrix output_frame =
      linalg::complete_to_unitary(v.matrix());
  return output_frame * input_frame.adjoint();
}

std::array<double, 3> measurement_probabilities(const StepIsometry& v,
                                                const QubitState& psi) {
  psi.validate();
  const JointState joint = v.apply(psi);
  return {std::norm(joint.amp[0]) + std::norm(joint.amp[1]),
          std::norm(joint.amp[2]) + std::norm(joint.amp[3]),
          std::norm(joint.amp[4]) + std::norm(joint.amp[5])};
}

QubitState collapsed_state(const StepIsometry& v, const QubitState& psi,
                           int outcome) {
  if (outcome < 0 || outcome > 2) {
    throw std::invalid_argument("measurement outcome out of range");
  }
  const JointState joint = v.apply(psi);
  const double pj =
      std::norm(joint.amp[2 * outcome]) + std::norm(joint.amp[2 * outcome + 1]);
  if (pj <= 0.0) {
    throw std::runtime_error("collapse onto a zero-probability branch");
  }
  const double root = std::sqrt(pj);
  return QubitState{
      {joint.amp[2 * outcome] / root, joint.amp[2 * outcome + 1] / root}};
}

std::pair<int, QubitState> apply_and_measure(const QubitState& memory,
                                             const StepIsometry& v, Rng& rng) {
  const auto probs = measurement_probabilities(v, memory);
  const int j = static_cast<int>(rng.categorical(probs));
  return {j, collapsed_state(v, memory, j)};
}

process::OutputTrajectory run_quantum_trajectory(
    const process::ProcessParams& params, std::optional<int> initial,
    std::size_t steps, Rng& rng, std::vector<process::CausalState>* states_out) {
  if (steps < 1) throw std::invalid_argument("trajectory needs at least one step");
  params.validate();
  const StepIsometry v = step_isometry(params);
  Rng init_rng = rng.stream(0);
  Rng step_rng = rng.stream(1);
  QubitState memory;
  if (initial.has_value()) {
    memory = encode_causal_qubit(params, *initial);
  } else {
    params.require_interior();
    const auto pi = process::stationary_distribution(
        process::build_transition_matrix(params));
    memory = encode_causal_qubit(
        params, static_cast<int>(init_rng.categorical(pi.weights())));
  }
  process::OutputTrajectory out;
  out.symbols.reserve(steps);
  if (states_out) states_out->reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    auto [symbol, collapsed] = apply_and_measure(memory, v, step_rng);
    out.symbols.push_back(static_cast<std::uint8_t>(symbol));
    if (states_out) states_out->push_back(process::causal_state_from_index(symbol));
    memory = collapsed;
  }
  return out;
}

process::WordDistribution quantum_word_distribution(
    const process::ProcessParams& params, std::optional<int> initial, int length) {
  if (length < 1 || length > 8) {
    throw std::invalid_argument("word length must be in [1, 8]");
  }
  const StepIsometry v = step_isometry(params);
  process::WordDistribution dist;
  dist.length = length;
  dist.prob.assign(static_cast<std::size_t>(std::pow(3.0, length)), 0.0);
  if (initial.has_value()) {
    enumerate_branches(v, encode_causal_qubit(params, *initial), 0, length, 1.0, 0,
                       dist.prob);
  } else {
    params.require_interior();
    const auto pi = process::stationary_distribution(
        process::build_transition_matrix(params));
    for (int i = 0; i < 3; ++i) {
      if (pi[i] == 0.0) continue;
      enumerate_branches(v, encode_causal_qubit(params, i), 0, length, pi[i], 0,
                         dist.prob);
    }
  }
  return dist;
}

DensityMatrix quantum_stationary_state(const process::ProcessParams& params) {
  params.require_interior();
  const auto pi =
      process::stationary_distribution(process::build_transition_matrix(params));
  std::array<cplx, 4> acc{};
  for (int i = 0; i < 3; ++i) {
    const QubitState s = encode_causal_qubit(params, i);
    acc[0] += pi[i] * s.amp[0] * std::conj(s.amp[0]);
    acc[1] += pi[i] * s.amp[0] * std::conj(s.amp[1]);
    acc[2] += pi[i] * s.amp[1] * std::conj(s.amp[0]);
    acc[3] += pi[i] * s.amp[1] * std::conj(s.amp[1]);
  }
  return DensityMatrix(acc[0], acc[1], acc[2], acc[3]);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double h = 0.0;
  for (double lambda : rho.eigenvalues()) {
    if (lambda < 0.0) lambda = 0.0;  // tolerated tomography roundoff
    if (lambda > 0.0) h -= lambda * std::log2(lambda);
  }
  return std::max(h, 0.0);
}

double quantum_complexity(const process::ProcessParams& params) {
  return von_neumann_entropy(quantum_stationary_state(params));
}

double quantum_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  // Tr sqrt(sqrt(rho) sigma sqrt(rho)) via two 2x2 eigendecompositions.
  const auto rho_eig = linalg::hermitian_eig(rho.matrix());
  linalg::ComplexMatrix sqrt_rho(2, 2);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      cplx acc(0.0, 0.0);
      for (int k = 0; k < 2; ++k) {
        const double lambda = std::max(rho_eig.eigenvalues[k], 0.0);
        acc += rho_eig.eigenvectors.at(r, k) * std::sqrt(lambda) *
               std::conj(rho_eig.eigenvectors.at(c, k));
      }
      sqrt_rho.at(r, c) = acc;
    }
  }
  linalg::ComplexMatrix inner = sqrt_rho * sigma.matrix() * sqrt_rho;
  // Symmetrize away the last-bit Hermiticity drift before decomposing.
  for (int r = 0; r < 2; ++r) {
    for (int c = r; c < 2; ++c) {
      const cplx avg = 0.5 * (inner.at(r, c) + std::conj(inner.at(c, r)));
      inner.at(r, c) = avg;
      inner.at(c, r) = std::conj(avg);
    }
  }
  const auto inner_eig = linalg::hermitian_eig(inner);
  double fidelity = 0.0;
  for (double lambda : inner_eig.eigenvalues) {
    if (lambda > 0.0) fidelity += std::sqrt(lambda);
  }
  return std::min(fidelity, 1.0);
}

double classical_fidelity(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("classical fidelity needs equal-length distributions");
  }
  double f = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < -1e-12 || q[i] < -1e-12) {
      throw std::invalid_argument("classical fidelity needs non-negative weights");
    }
    f += std::sqrt(std::max(p[i], 0.0) * std::max(q[i], 0.0));
  }
  return std::min(f, 1.0);
}

double quantum_max_entropy() { return 1.0; }

}  // namespace epsim::quantum
