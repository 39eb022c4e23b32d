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

// Jump operators, the c-parametrized Lindblad generator, and its vectorized
// matrix. With row-major stacking the generator is
//
//   L_v = -i(H (x) I - I (x) H^T)
//         + sum_k g_k [2c L_k (x) L_k^* - L_k^dag L_k (x) I - I (x) (L_k^dag L_k)^T].

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hnl/models.hpp"
#include "hnl/types.hpp"

namespace hnl {

enum class JumpKind { collective, local };

/// Local jump variants. `block` is L_n = n_n + n_{n+1} + i|n+1><n|;
/// `literal` is L_n = n_n + i|n+1><n|, which is diagonal under L^dag L.
enum class LocalJumpForm { block, literal };

struct Jump {
  Operator op;
  double rate = 0.0;
  std::string label;
};

struct JumpSet {
  std::vector<Jump> jumps;
  JumpKind kind = JumpKind::collective;

  /// Throws DomainError on negative rates, DimensionError on mixed sizes.
  void validate() const;
  /// sum_k g_k L_k^dag L_k
  [[nodiscard]] Operator decay_operator() const;
};

/// N-1 nearest-neighbour jumps at a common rate. Open chains only.
[[nodiscard]] JumpSet jump_local(const LatticeSpec& lat, double rate,
                                 LocalJumpForm form = LocalJumpForm::block);

/// Open BC: L_c = I + iR with R = sum |n+1><n|, plus L_1 = |1><1|, both at `rate`.
/// Periodic BC: wrapped shift and no L_1.
[[nodiscard]] JumpSet jump_collective(const LatticeSpec& lat, double rate);

/// Hamiltonian, jump set, and jump weight c in [0, 1]. The vectorized matrix is
/// assembled on first use and cached; copies share the cache.
class LiouvillianModel {
 public:
  LiouvillianModel(Operator hamiltonian, JumpSet jumps, double c = 1.0);

  [[nodiscard]] const Operator& hamiltonian() const noexcept { return hamiltonian_; }
  [[nodiscard]] const JumpSet& jumps() const noexcept { return jumps_; }
  [[nodiscard]] double c() const noexcept { return c_; }
  [[nodiscard]] std::size_t hilbert_dim() const noexcept {
    return static_cast<std::size_t>(hamiltonian_.rows());
  }

  /// Same model with a different c.
  [[nodiscard]] LiouvillianModel with_c(double c) const;

  [[nodiscard]] const SuperOperator& matrix() const;

  /// L[rho] evaluated directly on the N x N matrix, without the superoperator.
  [[nodiscard]] DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  struct Cache {
    std::once_flag once;
    SuperOperator matrix;
  };

  Operator hamiltonian_;
  JumpSet jumps_;
  double c_;
  std::shared_ptr<Cache> cache_;
};

/// H - i sum_k g_k L_k^dag L_k
[[nodiscard]] Operator effective_nh_hamiltonian(const LiouvillianModel& m);

/// Assembles L_v from scratch.
[[nodiscard]] SuperOperator build_liouvillian(const LiouvillianModel& m);

/// out += scale * (a (x) b), skipping zero entries of a.
void add_kron(Matrix& out, Complex scale, const Matrix& a, const Matrix& b);

/// Symmetric tight-binding H_R with jumps of the given kind at rate gamma, c = 1.
/// Throws DomainError unless 0 <= gamma <= 1.
[[nodiscard]] LiouvillianModel build_hn_lme(const LatticeSpec& lat, double gamma, JumpKind kind,
                                            LocalJumpForm form = LocalJumpForm::block);

/// SSH hopping with the collective jump set at rate gamma, c = 1.
[[nodiscard]] LiouvillianModel build_ssh_lme(const LatticeSpec& lat, const SSHParams& p,
                                             double gamma);

}  // namespace hnl
