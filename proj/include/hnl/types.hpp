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

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hnl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Dense operator on the single-particle site basis (N x N).
using Operator = Matrix;
/// Density matrix rho on the site basis (N x N).
using DensityMatrix = Matrix;
/// Row-major stacking of a density matrix, length N^2.
using VectorizedState = Vector;

inline constexpr Complex kI{0.0, 1.0};

/// Operand shapes do not match.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter lies outside its physical or numerical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative routine failed to converge; results are never truncated silently.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vectorized Liouvillian. Keeps the Hilbert-space dimension alongside the
/// N^2 x N^2 matrix so eigenvectors can be folded back into density matrices.
class SuperOperator {
 public:
  SuperOperator() = default;
  SuperOperator(Matrix matrix, std::size_t hilbert_dim);

  [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] std::size_t hilbert_dim() const noexcept { return hilbert_dim_; }
  [[nodiscard]] std::size_t dim() const noexcept { return hilbert_dim_ * hilbert_dim_; }

  [[nodiscard]] VectorizedState apply(const VectorizedState& v) const { return matrix_ * v; }

 private:
  Matrix matrix_;
  std::size_t hilbert_dim_ = 0;
};

}  // namespace hnl
