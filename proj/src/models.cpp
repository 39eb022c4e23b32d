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

#include "hnl/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hnl/operators.hpp"
#include "hnl/random.hpp"

namespace hnl {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

void require_open(const LatticeSpec& lat, const char* what) {
  if (lat.boundary != Boundary::open) {
    throw DomainError(std::string(what) + " requires open boundary conditions");
  }
}

}  // namespace

void LatticeSpec::validate() const {
  if (n_sites < 2) throw DomainError("lattice needs at least 2 sites");
}

void HNParams::validate() const {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw DomainError("delta must lie in [0, 1), got " + std::to_string(delta));
  }
}

void SSHParams::validate() const {
  if (!(std::abs(chi) < 1.0)) throw DomainError("chi must satisfy |chi| < 1");
}

void DisorderSpec::validate() const {
  if (!(strength >= 0.0) || !std::isfinite(strength)) {
    throw DomainError("disorder strength must be finite and non-negative");
  }
}

void SpinModelParams::validate() const {
  const double twice = 2.0 * total_spin;
  if (!(total_spin > 0.0) || std::abs(twice - std::round(twice)) > 1e-12) {
    throw DomainError("total spin must be a positive integer or half-integer");
  }
  if (!(gamma >= 0.0)) throw DomainError("gamma must be non-negative");
}

Operator build_hn_hamiltonian(const LatticeSpec& lat, const HNParams& p) {
  lat.validate();
  p.validate();
  const auto n = idx(lat.n_sites);
  Operator h = Operator::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    h(k, k + 1) = 1.0 - p.delta;
    h(k + 1, k) = 1.0 + p.delta;
  }
  if (lat.boundary == Boundary::periodic) {
    h(n - 1, 0) += 1.0 - p.delta;
    h(0, n - 1) += 1.0 + p.delta;
  }
  return h;
}

HamiltonianSplit split_real_imag(const LatticeSpec& lat) {
  lat.validate();
  const auto n = idx(lat.n_sites);
  HamiltonianSplit s{Operator::Zero(n, n), Operator::Zero(n, n)};
  auto bond = [&](Eigen::Index a, Eigen::Index b) {
    s.real_part(a, b) += 1.0;
    s.real_part(b, a) += 1.0;
    s.imag_part(a, b) += kI;
    s.imag_part(b, a) += -kI;
  };
  for (Eigen::Index k = 0; k + 1 < n; ++k) bond(k, k + 1);
  if (lat.boundary == Boundary::periodic) bond(n - 1, 0);
  return s;
}

EuclideanAlgebra build_euclidean(const LatticeSpec& lat) {
  lat.validate();
  require_open(lat, "build_euclidean");
  const auto n = idx(lat.n_sites);
  EuclideanAlgebra a;
  a.e = Operator::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) a.e(k, k + 1) = 1.0;
  a.e0 = Operator::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) a.e0(k, k) = static_cast<double>(k + 1);
  a.ex = a.e + a.e.adjoint();
  a.ep = kI * (a.e - a.e.adjoint());
  return a;
}

std::vector<Complex> analytic_spectrum(const LatticeSpec& lat, const HNParams& p) {
  lat.validate();
  p.validate();
  const auto n = static_cast<double>(lat.n_sites);
  std::vector<Complex> out;
  out.reserve(lat.n_sites);
  for (std::size_t j = 1; j <= lat.n_sites; ++j) {
    const double jj = static_cast<double>(j);
    if (lat.boundary == Boundary::open) {
      out.emplace_back(2.0 * std::sqrt(1.0 - p.delta * p.delta) *
                           std::cos(jj * std::numbers::pi / (n + 1.0)),
                       0.0);
    } else {
      const double k = 2.0 * std::numbers::pi * jj / n;
      out.emplace_back(2.0 * std::cos(k), -2.0 * p.delta * std::sin(k));
    }
  }
  return out;
}

double radial_base(double delta, RadialBase base) {
  HNParams{delta}.validate();
  const double ratio = (1.0 + delta) / (1.0 - delta);
  return base == RadialBase::sqrt_ratio ? std::sqrt(ratio) : ratio;
}

namespace {

Vector sine_profile(std::size_t n_sites, std::size_t j, double r, double log_shift) {
  if (j < 1 || j > n_sites) throw DimensionError("eigenvector index j must lie in 1..N");
  const double n1 = static_cast<double>(n_sites) + 1.0;
  const double lr = std::log(r);
  Vector v(idx(n_sites));
  for (std::size_t s = 1; s <= n_sites; ++s) {
    const double site = static_cast<double>(s);
    v(idx(s - 1)) = std::exp(site * lr - log_shift) *
                    std::sin(site * static_cast<double>(j) * std::numbers::pi / n1);
  }
  return v;
}

}  // namespace

Vector analytic_right_eigenvector(const LatticeSpec& lat, const HNParams& p, std::size_t j,
                                  RadialBase base) {
  lat.validate();
  require_open(lat, "analytic_right_eigenvector");
  return sine_profile(lat.n_sites, j, radial_base(p.delta, base), 0.0);
}

Vector normalized_right_eigenvector(const LatticeSpec& lat, const HNParams& p, std::size_t j) {
  lat.validate();
  require_open(lat, "normalized_right_eigenvector");
  const double r = radial_base(p.delta);
  Vector v = sine_profile(lat.n_sites, j, r, static_cast<double>(lat.n_sites) * std::log(r));
  return v / v.norm();
}

Vector analytic_left_eigenvector(const LatticeSpec& lat, const HNParams& p, std::size_t j) {
  lat.validate();
  require_open(lat, "analytic_left_eigenvector");
  return sine_profile(lat.n_sites, j, 1.0 / radial_base(p.delta), 0.0);
}

Operator build_perturbation(const LatticeSpec& lat, double epsilon) {
  lat.validate();
  require_open(lat, "build_perturbation");
  const auto n = idx(lat.n_sites);
  Operator v = Operator::Zero(n, n);
  v(0, n - 1) = epsilon;
  v(n - 1, 0) = epsilon;
  return v;
}

RealVector disorder_offsets(const LatticeSpec& lat, const DisorderSpec& d) {
  lat.validate();
  d.validate();
  RealVector kappa = RealVector::Zero(idx(lat.n_sites));
  if (d.strength == 0.0) return kappa;
  for (std::size_t s = 0; s < lat.n_sites; ++s) {
    const double u = counter_uniform(d.seed, d.realization_index, s);
    kappa(idx(s)) = d.strength * (2.0 * u - 1.0);
  }
  return kappa;
}

Operator build_disorder(const LatticeSpec& lat, const DisorderSpec& d) {
  return disorder_offsets(lat, d).cast<Complex>().asDiagonal();
}

Operator build_ssh_hamiltonian(const LatticeSpec& lat, const SSHParams& p) {
  lat.validate();
  p.validate();
  const auto n = idx(lat.n_sites);
  Operator h = Operator::Zero(n, n);
  auto hop = [&](Eigen::Index bond) { return bond % 2 == 0 ? 1.0 - p.chi : 1.0 + p.chi; };
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    h(k, k + 1) = hop(k);
    h(k + 1, k) = hop(k);
  }
  if (lat.boundary == Boundary::periodic) {
    h(n - 1, 0) += hop(n - 1);
    h(0, n - 1) += hop(n - 1);
  }
  return h;
}

SpinOperators spin_operators(double total_spin) {
  SpinModelParams{total_spin, 0.0}.validate();
  const auto d = static_cast<Eigen::Index>(std::llround(2.0 * total_spin)) + 1;
  SpinOperators s;
  s.sminus = Operator::Zero(d, d);
  s.sz = Operator::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double m = total_spin - static_cast<double>(k);
    s.sz(k, k) = m;
    if (k + 1 < d) s.sminus(k + 1, k) = std::sqrt(total_spin * (total_spin + 1.0) - m * (m - 1.0));
  }
  const Operator splus = s.sminus.adjoint();
  s.sx = 0.5 * (splus + s.sminus);
  s.sy = (splus - s.sminus) / (2.0 * kI);
  return s;
}

SpinBistabilityModel build_spin_bistability(const SpinModelParams& p) {
  p.validate();
  const SpinOperators s = spin_operators(p.total_spin);
  return {s.sx, s.sminus, p.gamma / p.total_spin, s.sz};
}

}  // namespace hnl
