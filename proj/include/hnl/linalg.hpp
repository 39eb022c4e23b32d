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

// Thin wrappers over LAPACK for the dense non-Hermitian work: zgeev for the
// full eigendecomposition and zgeqp3 (QR with column pivoting) for kernels.

#include <cstddef>

#include "hnl/types.hpp"

namespace hnl {

enum class EigenVectors { none, right, left_and_right };

struct EigenSystem {
  Vector values;
  Matrix right;  // columns, unit 2-norm; empty unless requested
  Matrix left;   // columns u_j with u_j^H A = lambda_j u_j^H; empty unless requested
};

/// Full eigendecomposition of a general complex matrix (QR algorithm).
/// Throws ConvergenceError if LAPACK reports unconverged eigenvalues.
/// Tridiagonal input is first rescaled so each off-diagonal pair has equal modulus.
[[nodiscard]] EigenSystem general_eigen(const Matrix& a, EigenVectors which = EigenVectors::none);

[[nodiscard]] Vector general_eigenvalues(const Matrix& a);

struct NullSpace {
  Matrix basis;           // orthonormal columns spanning ker(a)
  RealVector r_diagonal;  // |R_ii| from the pivoted QR, non-increasing
  std::size_t rank = 0;
};

/// Numerical kernel from a column-pivoted QR: |R_ii| <= tol counts as zero.
[[nodiscard]] NullSpace null_space(const Matrix& a, double tol);

}  // namespace hnl
