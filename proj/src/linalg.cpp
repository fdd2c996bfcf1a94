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

#include "epsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace epsim::linalg {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kIsometryTol = 1e-10;
constexpr double kOffDiagonalTarget = 1e-13;
constexpr double kResidualSkip = 1e-8;
constexpr double kProbabilityTol = 1e-12;
constexpr int kMaxJacobiSweeps = 100;

/// Closed-form eigendecomposition of [[a, b], [conj(b), d]] with a, d real.
/// Writes the ascending eigenvalues and the matching orthonormal columns.
void eig2(double a, cplx b, double d, double& lo, double& hi,
          std::array<cplx, 2>& v_lo, std::array<cplx, 2>& v_hi) {
  const double babs = std::abs(b);
  const double mid = 0.5 * (a + d);
  const double half_gap = 0.5 * (a - d);
  const double radius = std::hypot(half_gap, babs);
  lo = mid - radius;
  hi = mid + radius;
  if (babs == 0.0) {
    if (a <= d) {
      v_lo = {1.0, 0.0};
      v_hi = {0.0, 1.0};
    } else {
      v_lo = {0.0, 1.0};
      v_hi = {1.0, 0.0};
    }
    return;
  }
  // Pick the component of (A - hi*I)v = 0 that avoids cancellation.
  if (half_gap >= 0.0) {
    v_hi = {half_gap + radius, std::conj(b)};
  } else {
    v_hi = {b, radius - half_gap};
  }
  const double norm = std::sqrt(std::norm(v_hi[0]) + std::norm(v_hi[1]));
  v_hi[0] /= norm;
  v_hi[1] /= norm;
  v_lo = {-std::conj(v_hi[1]), std::conj(v_hi[0])};
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) sum += std::norm(a.at(i, j));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      m.at(c, r) = std::conj(at(r, c));
    }
  }
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  ComplexMatrix m(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const cplx lhs_rk = at(r, k);
      if (lhs_rk == cplx(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) {
        m.at(r, c) += lhs_rk * rhs.at(k, c);
      }
    }
  }
  return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  }
  return worst;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r; c < cols_; ++c) {
      if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
    }
  }
  return true;
}

void ComplexMatrix::check_finite() const {
  for (const cplx& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("matrix entry is not finite");
    }
  }
}

std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const cplx> x) {
  if (x.size() != a.cols()) throw std::invalid_argument("matvec: shape mismatch");
  std::vector<cplx> y(a.rows(), cplx(0.0, 0.0));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      y[r] += a.at(r, c) * x[c];
    }
  }
  return y;
}

ProbabilityVector::ProbabilityVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("probability vector is empty");
  double total = 0.0;
  for (double& w : weights_) {
    if (!std::isfinite(w)) throw std::invalid_argument("probability weight is not finite");
    if (w < 0.0) {
      if (w < -kProbabilityTol) {
        throw std::invalid_argument("probability weight is negative");
      }
      w = 0.0;
    }
    if (w > 1.0 + kProbabilityTol) {
      throw std::invalid_argument("probability weight exceeds 1");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kProbabilityTol) {
    throw std::invalid_argument("probability weights do not sum to 1");
  }
}

HermitianEigenResult hermitian_eig(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  if (n < 2 || n > 8 || a.cols() != n) {
    throw std::invalid_argument("hermitian_eig: dimension must be in [2, 8]");
  }
  a.check_finite();
  if (!a.is_hermitian(kHermitianTol)) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  }

  HermitianEigenResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors = ComplexMatrix::identity(n);

  if (n == 2) {
    std::array<cplx, 2> v_lo, v_hi;
    eig2(a.at(0, 0).real(), a.at(0, 1), a.at(1, 1).real(),
         result.eigenvalues[0], result.eigenvalues[1], v_lo, v_hi);
    result.eigenvectors.at(0, 0) = v_lo[0];
    result.eigenvectors.at(1, 0) = v_lo[1];
    result.eigenvectors.at(0, 1) = v_hi[0];
    result.eigenvectors.at(1, 1) = v_hi[1];
    return result;
  }

  ComplexMatrix work = a;
  ComplexMatrix q = ComplexMatrix::identity(n);
  int sweep = 0;
  while (off_diagonal_norm(work) > kOffDiagonalTarget) {
    if (++sweep > kMaxJacobiSweeps) {
      throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        if (work.at(p, r) == cplx(0.0, 0.0)) continue;
        double lo, hi;
        std::array<cplx, 2> v_lo, v_hi;
        eig2(work.at(p, p).real(), work.at(p, r), work.at(r, r).real(),
             lo, hi, v_lo, v_hi);
        // Rotate columns p,r of work and q by R = [v_lo | v_hi], then rows
        // of work by R^dagger; this zeroes the (p, r) pivot.
        for (std::size_t i = 0; i < n; ++i) {
          const cplx wp = work.at(i, p), wr = work.at(i, r);
          work.at(i, p) = wp * v_lo[0] + wr * v_lo[1];
          work.at(i, r) = wp * v_hi[0] + wr * v_hi[1];
          const cplx qp = q.at(i, p), qr = q.at(i, r);
          q.at(i, p) = qp * v_lo[0] + qr * v_lo[1];
          q.at(i, r) = qp * v_hi[0] + qr * v_hi[1];
        }
        for (std::size_t i = 0; i < n; ++i) {
          const cplx wp = work.at(p, i), wr = work.at(r, i);
          work.at(p, i) = std::conj(v_lo[0]) * wp + std::conj(v_lo[1]) * wr;
          work.at(r, i) = std::conj(v_hi[0]) * wp + std::conj(v_hi[1]) * wr;
        }
        work.at(p, r) = 0.0;
        work.at(r, p) = 0.0;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return work.at(i, i).real() < work.at(j, j).real();
  });
  for (std::size_t c = 0; c < n; ++c) {
    result.eigenvalues[c] = work.at(order[c], order[c]).real();
    for (std::size_t i = 0; i < n; ++i) {
      result.eigenvectors.at(i, c) = q.at(i, order[c]);
    }
  }
  return result;
}

double shannon_entropy(const ProbabilityVector& p) {
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double w = p[i];
    if (w > 0.0) h -= w * std::log2(w);
  }
  return std::max(h, 0.0);
}

ComplexMatrix complete_to_unitary(const ComplexMatrix& v) {
  const std::size_t n = v.rows();
  const std::size_t k = v.cols();
  if (k >= n) throw std::invalid_argument("complete_to_unitary: need k < n");
  v.check_finite();
  const ComplexMatrix gram = v.adjoint() * v;
  if (gram.max_abs_diff(ComplexMatrix::identity(k)) > kIsometryTol) {
    throw std::invalid_argument("complete_to_unitary: columns are not orthonormal");
  }

  ComplexMatrix u(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < k; ++c) u.at(r, c) = v.at(r, c);
  }

  std::size_t cols = k;
  auto project_out = [&](std::vector<cplx>& r) {
    for (std::size_t c = 0; c < cols; ++c) {
      cplx overlap(0.0, 0.0);
      for (std::size_t i = 0; i < n; ++i) overlap += std::conj(u.at(i, c)) * r[i];
      for (std::size_t i = 0; i < n; ++i) r[i] -= overlap * u.at(i, c);
    }
  };
  auto norm_of = [&](const std::vector<cplx>& r) {
    double s = 0.0;
    for (const cplx& z : r) s += std::norm(z);
    return std::sqrt(s);
  };

  for (std::size_t basis = 0; basis < n && cols < n; ++basis) {
    std::vector<cplx> residual(n, cplx(0.0, 0.0));
    residual[basis] = 1.0;
    project_out(residual);
    if (norm_of(residual) < kResidualSkip) continue;
    project_out(residual);  // second pass tightens orthogonality
    const double norm = norm_of(residual);
    for (std::size_t i = 0; i < n; ++i) u.at(i, cols) = residual[i] / norm;
    ++cols;
  }
  if (cols < n) {
    throw std::runtime_error("complete_to_unitary: basis exhausted before completion");
  }
  return u;
}

ProbabilityVector stationary_fixed_point(std::span<const double> t, std::size_t n) {
  if (n < 2 || t.size() != n * n) {
    throw std::invalid_argument("stationary_fixed_point: bad shape");
  }
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double e = t[i * n + j];
      if (!std::isfinite(e) || e < -kProbabilityTol || e > 1.0 + kProbabilityTol) {
        throw std::invalid_argument("stationary_fixed_point: entry out of [0, 1]");
      }
      row_sum += e;
    }
    if (std::abs(row_sum - 1.0) > 1e-9) {
      throw std::invalid_argument("stationary_fixed_point: matrix is not row-stochastic");
    }
  }

  // (T^t - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  std::vector<double> m(n * n);
  std::vector<double> rhs(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      m[r * n + c] = t[c * n + r] - (r == c ? 1.0 : 0.0);
    }
  }
  for (std::size_t c = 0; c < n; ++c) m[(n - 1) * n + c] = 1.0;
  rhs[n - 1] = 1.0;

  std::vector<std::size_t> row(n);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(m[row[col] * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double cand = std::abs(m[row[r] * n + col]);
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best < 1e-12) {
      throw std::runtime_error("stationary_fixed_point: fixed point is not unique");
    }
    std::swap(row[col], row[pivot]);
    const double diag = m[row[col] * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = m[row[r] * n + col] / diag;
      if (factor == 0.0) continue;
      m[row[r] * n + col] = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) {
        m[row[r] * n + c] -= factor * m[row[col] * n + c];
      }
      rhs[row[r]] -= factor * rhs[row[col]];
    }
  }

  std::vector<double> pi(n, 0.0);
  for (std::size_t col = n; col-- > 0;) {
    double acc = rhs[row[col]];
    for (std::size_t c = col + 1; c < n; ++c) acc -= m[row[col] * n + c] * pi[c];
    pi[col] = acc / m[row[col] * n + col];
  }

  double total = 0.0;
  for (double& w : pi) {
    if (w < 0.0 && w > -1e-10) w = 0.0;
    total += w;
  }
  if (!(total > 0.5)) {
    throw std::runtime_error("stationary_fixed_point: solve produced invalid weights");
  }
  for (double& w : pi) w /= total;

  // pi T = pi must hold; anything else means the solve hit a pathology.
  for (std::size_t j = 0; j < n; ++j) {
    double image = 0.0;
    for (std::size_t i = 0; i < n; ++i) image += pi[i] * t[i * n + j];
    if (std::abs(image - pi[j]) > 1e-12) {
      throw std::runtime_error("stationary_fixed_point: residual check failed");
    }
  }
  return ProbabilityVector(std::move(pi));
}

}  // namespace epsim::linalg
