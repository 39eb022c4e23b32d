// Copyright 2026 The hn-lindblad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hnl/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hnl {

SuperOperator::SuperOperator(Matrix matrix, std::size_t hilbert_dim)
    : matrix_(std::move(matrix)), hilbert_dim_(hilbert_dim) {
  const auto d = static_cast<Eigen::Index>(hilbert_dim * hilbert_dim);
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw DimensionError("superoperator must be N^2 x N^2 for N = " + std::to_string(hilbert_dim));
  }
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const Eigen::Index br = b.rows();
  const Eigen::Index bc = b.cols();
  Matrix out = Matrix::Zero(a.rows() * br, a.cols() * bc);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Complex aij = a(i, j);
      if (aij != Complex{}) out.block(i * br, j * bc, br, bc) = aij * b;
    }
  }
  return out;
}

VectorizedState vectorize(const DensityMatrix& rho) {
  if (rho.rows() != rho.cols()) throw DimensionError("vectorize: density matrix must be square");
  const Eigen::Index n = rho.rows();
  VectorizedState v(n * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) v(n * r + c) = rho(r, c);
  }
  return v;
}

DensityMatrix devectorize(const VectorizedState& v) {
  const auto len = static_cast<std::size_t>(v.size());
  auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(len))));
  if (n * n != len) {
    throw DimensionError("devectorize: length " + std::to_string(len) + " is not a perfect square");
  }
  const auto ni = static_cast<Eigen::Index>(n);
  DensityMatrix rho(ni, ni);
  for (Eigen::Index r = 0; r < ni; ++r) {
    for (Eigen::Index c = 0; c < ni; ++c) rho(r, c) = v(ni * r + c);
  }
  return rho;
}

Complex hs_inner(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols() || rho.rows() != rho.cols()) {
    throw DimensionError("hs_inner: operands must be square and of equal size");
  }
  // Tr[rho sigma] = sum_{n,m} rho(n,m) sigma(m,n)
  return (rho.array() * sigma.transpose().array()).sum();
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Operator identity(std::size_t n) {
  const auto ni = static_cast<Eigen::Index>(n);
  return Operator::Identity(ni, ni);
}

Operator matrix_unit(std::size_t n, std::size_t row, std::size_t col) {
  if (row >= n || col >= n) throw DimensionError("matrix_unit: index out of range");
  const auto ni = static_cast<Eigen::Index>(n);
  Operator e = Operator::Zero(ni, ni);
  e(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  return e;
}

Vector basis_ket(std::size_t n, std::size_t k) {
  if (k >= n) throw DimensionError("basis_ket: index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return v;
}

double relative_difference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("relative_difference: shape mismatch");
  }
  return (a - b).norm() / std::max(b.norm(), 1.0);
}

bool is_hermitian(const Matrix& a, double tol) {
  return a.rows() == a.cols() && (a - a.adjoint()).norm() <= tol;
}

}  // namespace hnl
