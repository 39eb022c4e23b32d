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

// Lattice Hamiltonians and analytic reference formulas for the Hatano-Nelson
// chain, its SSH generalization, and the spin bistability model.
//
// Site indices are 0-based in the API. Hopping t_{n,n+1} sits at (n, n+1).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hnl/types.hpp"

namespace hnl {

enum class Boundary { open, periodic };

struct LatticeSpec {
  std::size_t n_sites = 0;
  Boundary boundary = Boundary::open;

  /// Throws DomainError for N < 2.
  void validate() const;
};

/// Hatano-Nelson asymmetry, 0 <= delta < 1.
struct HNParams {
  double delta = 0.0;
  void validate() const;
};

/// SSH dimerization, |chi| < 1.
struct SSHParams {
  double chi = 0.0;
  void validate() const;
};

struct DisorderSpec {
  double strength = 0.0;  // W
  std::uint64_t seed = 0;
  std::uint64_t realization_index = 0;
  void validate() const;
};

struct SpinModelParams {
  double total_spin = 0.5;  // S, integer or half-integer
  double gamma = 0.0;
  void validate() const;
};

/// H[n, n+1] = 1 - delta, H[n+1, n] = 1 + delta. Periodic BC adds
/// H[N-1, 0] = 1 - delta and H[0, N-1] = 1 + delta.
[[nodiscard]] Operator build_hn_hamiltonian(const LatticeSpec& lat, const HNParams& p);

struct HamiltonianSplit {
  Operator real_part;  // symmetric tight-binding H_R
  Operator imag_part;  // H_I = i sum (a_n^dag a_{n+1} - h.c.)
};

/// H_R + i delta H_I equals build_hn_hamiltonian for every delta.
[[nodiscard]] HamiltonianSplit split_real_imag(const LatticeSpec& lat);

struct EuclideanAlgebra {
  Operator e;   // E|n> = |n-1>, E|first> = 0
  Operator e0;  // diag(1, 2, ..., N)
  Operator ex;  // E + E^dag
  Operator ep;  // i(E - E^dag)
};

/// Open chains only.
[[nodiscard]] EuclideanAlgebra build_euclidean(const LatticeSpec& lat);

/// Closed-form spectrum, j = 1..N in order. Open: 2 sqrt(1-delta^2) cos(j pi/(N+1)).
/// Periodic: 2[cos(2 pi j/N) - i delta sin(2 pi j/N)].
[[nodiscard]] std::vector<Complex> analytic_spectrum(const LatticeSpec& lat, const HNParams& p);

enum class RadialBase {
  sqrt_ratio,  // sqrt((1+delta)/(1-delta)), matches numerics
  ratio,       // (1+delta)/(1-delta), kept for comparison
};

[[nodiscard]] double radial_base(double delta, RadialBase base = RadialBase::sqrt_ratio);

/// Components r^n sin(n j pi/(N+1)), n = 1..N, j in 1..N. Unnormalized.
[[nodiscard]] Vector analytic_right_eigenvector(const LatticeSpec& lat, const HNParams& p,
                                                std::size_t j,
                                                RadialBase base = RadialBase::sqrt_ratio);

/// Same vector scaled to unit norm without overflowing for large r^N.
[[nodiscard]] Vector normalized_right_eigenvector(const LatticeSpec& lat, const HNParams& p,
                                                  std::size_t j);

/// Components r^-n sin(n j pi/(N+1)), biorthogonal partner of the right vector.
[[nodiscard]] Vector analytic_left_eigenvector(const LatticeSpec& lat, const HNParams& p,
                                               std::size_t j);

/// epsilon (|1><N| + |N><1|).
[[nodiscard]] Operator build_perturbation(const LatticeSpec& lat, double epsilon);

/// Onsite kappa_n drawn uniformly from [-W, W].
[[nodiscard]] RealVector disorder_offsets(const LatticeSpec& lat, const DisorderSpec& d);
[[nodiscard]] Operator build_disorder(const LatticeSpec& lat, const DisorderSpec& d);

/// Even bonds (0-based n = 0, 2, ...) carry 1 - chi, odd bonds 1 + chi.
[[nodiscard]] Operator build_ssh_hamiltonian(const LatticeSpec& lat, const SSHParams& p);

struct SpinOperators {
  Operator sx, sy, sz, sminus;
};

/// Basis ordered m = S, S-1, ..., -S.
[[nodiscard]] SpinOperators spin_operators(double total_spin);

struct SpinBistabilityModel {
  Operator hamiltonian;  // S_x
  Operator jump;         // S^-
  double rate = 0.0;     // gamma / S
  Operator sz;
};

[[nodiscard]] SpinBistabilityModel build_spin_bistability(const SpinModelParams& p);

}  // namespace hnl
