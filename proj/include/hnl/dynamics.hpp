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

// Time evolution under the full master equation and under renormalized
// non-Hermitian evolution, plus the auto-correlation used by the sensor.

#include <optional>
#include <string>
#include <vector>

#include "hnl/liouvillian.hpp"
#include "hnl/models.hpp"
#include "hnl/types.hpp"

namespace hnl {

enum class PropagationMethod { exact_exponential, adaptive_integrator };

struct PropagationSpec {
  double t_final = 0.0;
  double dt = 1.0;  // sampling interval for trajectories
  PropagationMethod method = PropagationMethod::exact_exponential;
  double rtol = 1e-9;
  double atol = 1e-12;

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

/// rho(t_final) from a physical rho0 under a trace-preserving model (c = 1).
/// The exact path uses the eigendecomposition of L_v and switches to a
/// Pade matrix exponential when the eigenvector matrix is ill-conditioned.
/// The adaptive path integrates d rho/dt = L[rho] with Dormand-Prince 5(4).
/// When `trajectory` is given it receives samples at 0, dt, 2dt, ..., t_final.
[[nodiscard]] DensityMatrix propagate_lme(const LiouvillianModel& m, const DensityMatrix& rho0,
                                          const PropagationSpec& spec,
                                          Trajectory* trajectory = nullptr);

struct NHPropagation {
  Vector psi;  // unit norm
  double norm_before = 0.0;  // ||exp(-i H t) psi0|| prior to renormalization
  bool used_fallback = false;
  std::string warning;
};

/// exp(-i H_eff t) psi0 followed by renormalization. Requires ||psi0|| = 1.
[[nodiscard]] NHPropagation propagate_nh(const Operator& h_eff, const Vector& psi0,
                                         const PropagationSpec& spec);

/// ln A with A = |<phi_z^L | psi(t)>|, psi(t) the renormalized evolution of the
/// unit right zero mode under H_HN + V(epsilon) [+ disorder], and
/// <phi_z^L|phi_z^R> = 1. Evaluated in the imaginary-gauge frame, where the
/// clean chain is symmetric, so values down to ~1e-15 are resolved.
/// Throws DomainError for even N or periodic BC.
[[nodiscard]] double log_autocorrelation(const LatticeSpec& lat, const HNParams& p, double epsilon,
                                         const std::optional<DisorderSpec>& disorder, double t);

[[nodiscard]] double autocorrelation(const LatticeSpec& lat, const HNParams& p, double epsilon,
                                     const std::optional<DisorderSpec>& disorder, double t);

/// Same quantity computed literally in the site basis with propagate_nh and
/// the analytic zero modes. Only well conditioned for small N.
[[nodiscard]] double autocorrelation_direct(const LatticeSpec& lat, const HNParams& p,
                                            double epsilon,
                                            const std::optional<DisorderSpec>& disorder, double t);

/// Eigenvalue of H_HN + V(epsilon) [+ disorder] closest to zero.
[[nodiscard]] Complex perturbed_zero_shift(const LatticeSpec& lat, const HNParams& p,
                                           double epsilon,
                                           const std::optional<DisorderSpec>& disorder = {});

/// |Im| > 1e-3 |Re|: the shifted zero mode has left the real axis.
[[nodiscard]] bool past_knee(Complex zero_shift, double ratio = 1e-3);

}  // namespace hnl
