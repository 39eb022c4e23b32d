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

// Dense operator algebra and Liouville-space vectorization.
//
// Vectorization is row-major: the matrix unit |n><m| (0-based n, m) maps to
// component l = N*n + m, i.e. l = N(n-1)+m in 1-based site labels. Under this
// convention vec(A rho B) = (A kron B^T) vec(rho), which every superoperator
// in the library relies on.

#include <cstddef>

#include "hnl/types.hpp"

namespace hnl {

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
[[nodiscard]] Matrix kron(const Matrix& a, const Matrix& b);

[[nodiscard]] VectorizedState vectorize(const DensityMatrix& rho);

/// Inverse of vectorize. Throws DimensionError unless the length is a perfect square.
[[nodiscard]] DensityMatrix devectorize(const VectorizedState& v);

/// Liouville index of |n><m| for 0-based site indices.
[[nodiscard]] constexpr std::size_t liouville_index(std::size_t n_sites, std::size_t n,
                                                    std::size_t m) noexcept {
  return n_sites * n + m;
}

/// Tr[rho sigma], with no adjoint on the first argument. Coincides with the
/// Hilbert-Schmidt product for Hermitian rho.
[[nodiscard]] Complex hs_inner(const DensityMatrix& rho, const DensityMatrix& sigma);

[[nodiscard]] Matrix commutator(const Matrix& a, const Matrix& b);

[[nodiscard]] Operator identity(std::size_t n);

/// |row><col| on an n-dimensional space (0-based indices).
[[nodiscard]] Operator matrix_unit(std::size_t n, std::size_t row, std::size_t col);

/// |k> on an n-dimensional space (0-based index).
[[nodiscard]] Vector basis_ket(std::size_t n, std::size_t k);

/// Frobenius norm of (a - b) divided by max(||b||, 1); the library's yardstick
/// for algebraic identities.
[[nodiscard]] double relative_difference(const Matrix& a, const Matrix& b);

[[nodiscard]] bool is_hermitian(const Matrix& a, double tol);

}  // namespace hnl
