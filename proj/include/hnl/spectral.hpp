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

// Liouvillian spectra, steady states, gaps, and critical-scaling fits.
//
// Steady modes are eigenvalues with |mu| <= tol_zero, where
// tol_zero = tol_zero_rel * ||L_v||_F (default tol_zero_rel = 1e-10).

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "hnl/types.hpp"

namespace hnl {

struct SpectralOptions {
  double tol_zero_rel = 1e-10;
  bool eigenmatrices = true;
  std::size_t dim_cap = 4096;
};

struct SpectralResult {
  std::vector<Complex> eigenvalues;
  /// Devectorized right eigenvectors; empty when eigenmatrices were not requested.
  /// Steady candidates with a nonzero trace are scaled to Tr = 1, the rest have unit norm.
  std::vector<DensityMatrix> right_eigenmatrices;
  std::vector<std::size_t> steady_indices;
  double gap = 0.0;
  double tol_zero = 0.0;
};

/// Complete eigendecomposition. Throws DimensionError above dim_cap and
/// ConvergenceError if the QR iteration does not converge.
[[nodiscard]] SpectralResult eig_full(const SuperOperator& m, const SpectralOptions& opt = {});

/// min |Re mu| over modes with |mu| > tol_zero; 0 when every mode is a zero mode.
[[nodiscard]] double liouvillian_gap(const SpectralResult& r);
[[nodiscard]] double liouvillian_gap(const std::vector<Complex>& eigenvalues, double tol_zero);

struct SteadyStateOptions {
  double tol_zero_rel = 1e-10;
  double refine_threshold = 1e-10;  // relative kernel residual that triggers inverse iteration
};

struct SteadyStateResult {
  /// Unique kernel: trace-normalized, Hermitized kernel vector. Degenerate kernel:
  /// the kernel projection of the identity, trace-normalized.
  DensityMatrix rho;
  /// Kernel basis, orthonormal in the Frobenius product.
  std::vector<DensityMatrix> basis;
  std::size_t multiplicity = 0;
  double residual = 0.0;  // ||L_v vec(rho)|| / (||L_v||_F ||vec(rho)||)
  bool refined = false;

  [[nodiscard]] bool unique() const noexcept { return multiplicity == 1; }
};

/// Kernel of L_v from a column-pivoted QR. A degenerate kernel is reported via
/// `multiplicity`, not thrown. Throws ConvergenceError if the kernel is empty.
[[nodiscard]] SteadyStateResult steady_state(const SuperOperator& m,
                                             const SteadyStateOptions& opt = {});

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares; needs at least two distinct x values.
[[nodiscard]] LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingFit {
  double exponent = 0.0;  // nu, with log gap = -(1/nu) log N + intercept
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> samples;  // (N, gap)
};

/// Throws DomainError for fewer than three samples or a nonpositive gap.
[[nodiscard]] ScalingFit gap_scaling_fit(const std::vector<std::pair<double, double>>& samples);

/// Hausdorff distance between two eigenvalue sets in the complex plane.
[[nodiscard]] double spectral_displacement(const std::vector<Complex>& a,
                                           const std::vector<Complex>& b);
[[nodiscard]] double spectral_displacement(const SpectralResult& unperturbed,
                                           const SpectralResult& perturbed);

/// Columns: index, re_mu, im_mu, trace_re, trace_im, is_steady.
void write_spectral_csv(std::ostream& os, const SpectralResult& r);

}  // namespace hnl
