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

#include "hnl/linalg.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace hnl {

namespace {

lapack_int as_lapack(Eigen::Index n) { return static_cast<lapack_int>(n); }

bool is_tridiagonal(const Matrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (std::abs(i - j) > 1 && a(i, j) != Complex{0.0, 0.0}) return false;
    }
  }
  return true;
}

// Diagonal similarity D^-1 A D equalizing |A(k,k+1)| and |A(k+1,k)|. gebal only
// approaches this in sweeps and stalls on strongly graded chains. Empty when not
// tridiagonal or when the scale range would leave double precision.
RealVector tridiagonal_scaling(const Matrix& a) {
  const Eigen::Index n = a.rows();
  if (n < 3 || !is_tridiagonal(a)) return {};
  RealVector log_d(n);
  log_d(0) = 0.0;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double up = std::abs(a(k, k + 1));
    const double low = std::abs(a(k + 1, k));
    log_d(k + 1) = log_d(k) + (up > 0.0 && low > 0.0 ? 0.5 * (std::log(low) - std::log(up)) : 0.0);
  }
  log_d.array() -= 0.5 * (log_d.maxCoeff() + log_d.minCoeff());
  if (log_d.cwiseAbs().maxCoeff() > 300.0) return {};
  if (log_d.cwiseAbs().maxCoeff() == 0.0) return {};
  return log_d.array().exp().matrix();
}

}  // namespace

EigenSystem general_eigen(const Matrix& a, EigenVectors which) {
  if (a.rows() != a.cols()) throw DimensionError("general_eigen: matrix must be square");
  const lapack_int n = as_lapack(a.rows());
  EigenSystem out;
  out.values.resize(n);
  if (n == 0) return out;
  const RealVector d = tridiagonal_scaling(a);
  Matrix work = a;
  if (d.size() > 0) work = d.cwiseInverse().asDiagonal() * a * d.asDiagonal();
  const bool want_right = which != EigenVectors::none;
  const bool want_left = which == EigenVectors::left_and_right;
  if (want_right) out.right.resize(n, n);
  if (want_left) out.left.resize(n, n);
  std::complex<double> dummy{};
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, want_left ? 'V' : 'N', want_right ? 'V' : 'N', n, work.data(), n,
      out.values.data(), want_left ? out.left.data() : &dummy, want_left ? n : 1,
      want_right ? out.right.data() : &dummy, want_right ? n : 1);
  if (info > 0) {
    throw ConvergenceError("zgeev: QR iteration failed, " + std::to_string(info) +
                           " eigenvalues did not converge");
  }
  if (info < 0) throw std::invalid_argument("zgeev: illegal argument " + std::to_string(-info));
  if (d.size() > 0) {
    if (want_right) {
      out.right = d.asDiagonal() * out.right;
      out.right.colwise().normalize();
    }
    if (want_left) {
      out.left = d.cwiseInverse().asDiagonal() * out.left;
      out.left.colwise().normalize();
    }
  }
  return out;
}

Vector general_eigenvalues(const Matrix& a) { return general_eigen(a, EigenVectors::none).values; }

NullSpace null_space(const Matrix& a, double tol) {
  const lapack_int m = as_lapack(a.rows());
  const lapack_int n = as_lapack(a.cols());
  NullSpace out;
  if (n == 0) return out;
  Matrix qr = a;
  std::vector<lapack_int> jpvt(static_cast<std::size_t>(n), 0);
  Vector tau(std::min(m, n));
  const lapack_int info =
      LAPACKE_zgeqp3(LAPACK_COL_MAJOR, m, n, qr.data(), m, jpvt.data(), tau.data());
  if (info != 0) throw std::invalid_argument("zgeqp3 failed with info " + std::to_string(info));

  const Eigen::Index kmax = std::min(m, n);
  out.r_diagonal.resize(kmax);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < kmax; ++i) {
    out.r_diagonal(i) = std::abs(qr(i, i));
    if (out.r_diagonal(i) > tol) rank = i + 1;
  }
  out.rank = static_cast<std::size_t>(rank);
  const Eigen::Index k = n - rank;
  if (k == 0) {
    out.basis.resize(n, 0);
    return out;
  }
  // A P = Q [R11 R12; 0 ~0]  =>  ker spanned by P [-R11^{-1} R12; I].
  Matrix z = Matrix::Zero(n, k);
  if (rank > 0) {
    z.topRows(rank) = -qr.topLeftCorner(rank, rank).triangularView<Eigen::Upper>().solve(
        qr.block(0, rank, rank, k));
  }
  z.bottomRows(k).setIdentity();
  Matrix basis(n, k);
  for (Eigen::Index i = 0; i < n; ++i) basis.row(jpvt[static_cast<std::size_t>(i)] - 1) = z.row(i);
  Eigen::HouseholderQR<Matrix> ortho(basis);
  out.basis = ortho.householderQ() * Matrix::Identity(n, k);
  return out;
}

}  // namespace hnl
