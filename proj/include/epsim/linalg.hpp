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

#ifndef EPSIM_LINALG_HPP
#define EPSIM_LINALG_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace epsim::linalg {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Sized for the small operators this
/// project works with (dimension <= 8); all entries must stay finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cplx> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;

  /// max_ij |A_ij - B_ij|; shapes must match.
  double max_abs_diff(const ComplexMatrix& other) const;

  bool is_hermitian(double tol) const;

  /// Throws if any entry is NaN or infinite.
  void check_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// y = A x for a column vector x of length A.cols().
std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const cplx> x);

/// Normalized discrete distribution. Construction validates that every
/// weight lies in [0, 1] and the total is 1, both within 1e-12; weights in
/// [-1e-12, 0) are clamped to zero.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

struct HermitianEigenResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // orthonormal columns, same order
};

/// Eigendecomposition of a Hermitian matrix, 2 <= dim <= 8. The 2x2 case
/// is solved in closed form; larger matrices use cyclic Jacobi sweeps run
/// until the off-diagonal Frobenius norm falls below 1e-13.
///
/// Throws std::invalid_argument if A is not Hermitian within 1e-10 or the
/// dimension is out of range, std::runtime_error if the sweep budget is
/// exhausted first.
HermitianEigenResult hermitian_eig(const ComplexMatrix& a);

/// Shannon entropy in bits, with 0 log 0 = 0.
double shannon_entropy(const ProbabilityVector& p);

/// Completes an n x k isometry (orthonormal columns, k < n) to an n x n
/// unitary. The first k columns of the result equal V exactly; the rest
/// come from Gram-Schmidt over the standard basis vectors in index order,
/// skipping candidates whose residual norm falls below 1e-8.
ComplexMatrix complete_to_unitary(const ComplexMatrix& v);

/// Stationary distribution of a row-stochastic n x n matrix (row-major
/// span of length n*n): the pi with pi T = pi, sum pi = 1. Solved by
/// Gaussian elimination with partial pivoting on the fixed-point system
/// with the last equation replaced by normalization.
///
/// Throws std::runtime_error when the fixed point is not unique (reducible
/// chain with multiple closed classes).
ProbabilityVector stationary_fixed_point(std::span<const double> t, std::size_t n);

}  // namespace epsim::linalg

#endif
