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

// Scalar diagnostics of density matrices and eigenvectors.
//
// The position operator is S = diag(-(N-1)/2, ..., (N-1)/2). The default
// scaled position divides by s_max = (N-1)/2, so xi = +1 exactly on the
// rightmost site; the 1/N variant is kept for figure comparisons.

#include <cstddef>

#include "hnl/types.hpp"

namespace hnl {

enum class XiNormalization { half_span, lattice_size };

/// Diagonal of S: -(N-1)/2 .. (N-1)/2 in unit steps.
[[nodiscard]] RealVector position_diagonal(std::size_t n);

/// Re Tr[rho S] / s_max (or / N). Throws DimensionError for N < 2.
[[nodiscard]] double scaled_position(const DensityMatrix& rho,
                                     XiNormalization norm = XiNormalization::half_span);

/// sqrt(<S^2> - <S>^2). Variances in (-1e-10, 0) clamp to zero; more negative
/// values throw DomainError.
[[nodiscard]] double width(const DensityMatrix& rho);

/// sqrt((N^2 - 1)/12), the width of I/N.
[[nodiscard]] double max_width(std::size_t n);

/// Re Tr[rho^2]
[[nodiscard]] double purity(const DensityMatrix& rho);

/// Re <phi|rho|phi>
[[nodiscard]] double fidelity_with_pure(const Vector& phi, const DensityMatrix& rho);

struct PhysicalityTolerances {
  double trace = 1e-9;
  double hermiticity = 1e-9;
  double min_eigenvalue = -1e-8;
};

struct PhysicalityReport {
  double trace_error = 0.0;        // |Tr rho - 1|
  double hermiticity_error = 0.0;  // ||rho - rho^dag||_F
  double min_eigenvalue = 0.0;     // of the Hermitian part
  bool trace_ok = false;
  bool hermitian_ok = false;
  bool positive_ok = false;

  [[nodiscard]] bool ok() const noexcept { return trace_ok && hermitian_ok && positive_ok; }
};

[[nodiscard]] PhysicalityReport validate_physical(const DensityMatrix& rho,
                                                  const PhysicalityTolerances& tol = {});

/// |psi_n|^2 / ||psi||^2
[[nodiscard]] RealVector right_occupation(const Vector& right);

/// Re(conj(l_n) r_n) / <l|r>; sums to one.
[[nodiscard]] RealVector biorthogonal_occupation(const Vector& left, const Vector& right);

/// Expectation value of a diagonal observable, Re sum_n rho_nn d_n.
[[nodiscard]] double diagonal_expectation(const DensityMatrix& rho, const RealVector& diag);

}  // namespace hnl
