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

#include "hnl/liouvillian.hpp"

#include <string>

#include "hnl/operators.hpp"

namespace hnl {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

void check_rate(double rate) {
  if (!(rate >= 0.0)) throw DomainError("jump rates must be non-negative");
}

}  // namespace

void JumpSet::validate() const {
  if (jumps.empty()) return;
  const Eigen::Index n = jumps.front().op.rows();
  for (const Jump& j : jumps) {
    check_rate(j.rate);
    if (j.op.rows() != n || j.op.cols() != n) {
      throw DimensionError("jump operators must share one square shape");
    }
  }
}

Operator JumpSet::decay_operator() const {
  if (jumps.empty()) throw DimensionError("decay_operator: empty jump set");
  const Eigen::Index n = jumps.front().op.rows();
  Operator d = Operator::Zero(n, n);
  for (const Jump& j : jumps) d += j.rate * (j.op.adjoint() * j.op);
  return d;
}

JumpSet jump_local(const LatticeSpec& lat, double rate, LocalJumpForm form) {
  lat.validate();
  check_rate(rate);
  if (lat.boundary != Boundary::open) throw DomainError("jump_local requires open boundary conditions");
  const auto n = idx(lat.n_sites);
  JumpSet set;
  set.kind = JumpKind::local;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    Operator l = Operator::Zero(n, n);
    l(k, k) = 1.0;
    l(k + 1, k) = kI;
    if (form == LocalJumpForm::block) l(k + 1, k + 1) = 1.0;
    set.jumps.push_back({std::move(l), rate, "L_" + std::to_string(k + 1)});
  }
  return set;
}

JumpSet jump_collective(const LatticeSpec& lat, double rate) {
  lat.validate();
  check_rate(rate);
  const auto n = idx(lat.n_sites);
  Operator lc = Operator::Identity(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) lc(k + 1, k) += kI;
  JumpSet set;
  set.kind = JumpKind::collective;
  if (lat.boundary == Boundary::periodic) {
    lc(0, n - 1) += kI;
    set.jumps.push_back({std::move(lc), rate, "L_c"});
    return set;
  }
  set.jumps.push_back({std::move(lc), rate, "L_c"});
  set.jumps.push_back({matrix_unit(lat.n_sites, 0, 0), rate, "L_1"});
  return set;
}

LiouvillianModel::LiouvillianModel(Operator hamiltonian, JumpSet jumps, double c)
    : hamiltonian_(std::move(hamiltonian)),
      jumps_(std::move(jumps)),
      c_(c),
      cache_(std::make_shared<Cache>()) {
  if (!(c_ >= 0.0 && c_ <= 1.0)) throw DomainError("c must lie in [0, 1]");
  if (hamiltonian_.rows() != hamiltonian_.cols() || hamiltonian_.rows() == 0) {
    throw DimensionError("Hamiltonian must be square and non-empty");
  }
  jumps_.validate();
  if (!jumps_.jumps.empty() && jumps_.jumps.front().op.rows() != hamiltonian_.rows()) {
    throw DimensionError("jump operators and Hamiltonian differ in size");
  }
}

LiouvillianModel LiouvillianModel::with_c(double c) const {
  return LiouvillianModel(hamiltonian_, jumps_, c);
}

const SuperOperator& LiouvillianModel::matrix() const {
  std::call_once(cache_->once, [this] { cache_->matrix = build_liouvillian(*this); });
  return cache_->matrix;
}

DensityMatrix LiouvillianModel::apply(const DensityMatrix& rho) const {
  DensityMatrix out = -kI * commutator(hamiltonian_, rho);
  for (const Jump& j : jumps_.jumps) {
    const Operator ll = j.op.adjoint() * j.op;
    out += j.rate * (2.0 * c_ * j.op * rho * j.op.adjoint() - ll * rho - rho * ll);
  }
  return out;
}

Operator effective_nh_hamiltonian(const LiouvillianModel& m) {
  Operator h = m.hamiltonian();
  for (const Jump& j : m.jumps().jumps) h -= kI * j.rate * (j.op.adjoint() * j.op);
  return h;
}

void add_kron(Matrix& out, Complex scale, const Matrix& a, const Matrix& b) {
  const Eigen::Index br = b.rows();
  const Eigen::Index bc = b.cols();
  if (out.rows() != a.rows() * br || out.cols() != a.cols() * bc) {
    throw DimensionError("add_kron: output has the wrong shape");
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Complex aij = a(i, j);
      if (aij != Complex{}) out.block(i * br, j * bc, br, bc) += (scale * aij) * b;
    }
  }
}

SuperOperator build_liouvillian(const LiouvillianModel& m) {
  const auto n = idx(m.hilbert_dim());
  const Operator id = Operator::Identity(n, n);
  Matrix lv = Matrix::Zero(n * n, n * n);
  const Operator& h = m.hamiltonian();
  add_kron(lv, -kI, h, id);
  add_kron(lv, kI, id, h.transpose());
  for (const Jump& j : m.jumps().jumps) {
    if (j.rate == 0.0) continue;
    const Operator ll = j.op.adjoint() * j.op;
    if (m.c() != 0.0) add_kron(lv, 2.0 * m.c() * j.rate, j.op, j.op.conjugate());
    add_kron(lv, -j.rate, ll, id);
    add_kron(lv, -j.rate, id, ll.transpose());
  }
  return SuperOperator(std::move(lv), m.hilbert_dim());
}

LiouvillianModel build_hn_lme(const LatticeSpec& lat, double gamma, JumpKind kind,
                              LocalJumpForm form) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw DomainError("gamma must lie in [0, 1], got " + std::to_string(gamma));
  }
  Operator h = split_real_imag(lat).real_part;
  JumpSet jumps = kind == JumpKind::collective ? jump_collective(lat, gamma)
                                               : jump_local(lat, gamma, form);
  return LiouvillianModel(std::move(h), std::move(jumps), 1.0);
}

LiouvillianModel build_ssh_lme(const LatticeSpec& lat, const SSHParams& p, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw DomainError("gamma must lie in [0, 1], got " + std::to_string(gamma));
  }
  return LiouvillianModel(build_ssh_hamiltonian(lat, p), jump_collective(lat, gamma), 1.0);
}

}  // namespace hnl
