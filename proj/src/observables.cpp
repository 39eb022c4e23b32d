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

#include "hnl/observables.hpp"

#include <cmath>

namespace hnl {

namespace {

void require_square(const DensityMatrix& rho) {
  if (rho.rows() != rho.cols()) throw DimensionError("density matrix must be square");
}

}  // namespace

RealVector position_diagonal(std::size_t n) {
  RealVector s(static_cast<Eigen::Index>(n));
  const double centre = (static_cast<double>(n) - 1.0) / 2.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) s(k) = static_cast<double>(k) - centre;
  return s;
}

double diagonal_expectation(const DensityMatrix& rho, const RealVector& diag) {
  require_square(rho);
  if (diag.size() != rho.rows()) throw DimensionError("diagonal observable has the wrong size");
  return (rho.diagonal().real().array() * diag.array()).sum();
}

double scaled_position(const DensityMatrix& rho, XiNormalization norm) {
  require_square(rho);
  const auto n = static_cast<std::size_t>(rho.rows());
  if (n < 2) throw DimensionError("scaled_position needs N >= 2");
  const double mean = diagonal_expectation(rho, position_diagonal(n));
  const double scale = norm == XiNormalization::half_span ? (static_cast<double>(n) - 1.0) / 2.0
                                                          : static_cast<double>(n);
  return mean / scale;
}

double width(const DensityMatrix& rho) {
  require_square(rho);
  const RealVector s = position_diagonal(static_cast<std::size_t>(rho.rows()));
  const double m1 = diagonal_expectation(rho, s);
  const double m2 = diagonal_expectation(rho, s.array().square().matrix());
  const double var = m2 - m1 * m1;
  if (var < -1e-10) throw DomainError("width: negative variance " + std::to_string(var));
  return std::sqrt(std::max(var, 0.0));
}

double max_width(std::size_t n) {
  const auto d = static_cast<double>(n);
  return std::sqrt((d * d - 1.0) / 12.0);
}

double purity(const DensityMatrix& rho) {
  require_square(rho);
  return (rho.array() * rho.transpose().array()).sum().real();
}

double fidelity_with_pure(const Vector& phi, const DensityMatrix& rho) {
  require_square(rho);
  if (phi.size() != rho.rows()) throw DimensionError("fidelity: vector and matrix differ in size");
  return phi.dot(rho * phi).real();
}

PhysicalityReport validate_physical(const DensityMatrix& rho, const PhysicalityTolerances& tol) {
  require_square(rho);
  PhysicalityReport r;
  r.trace_error = std::abs(rho.trace() - Complex{1.0, 0.0});
  r.hermiticity_error = (rho - rho.adjoint()).norm();
  const Matrix herm = 0.5 * (rho + rho.adjoint());
  const Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().size() ? es.eigenvalues().minCoeff() : 0.0;
  r.trace_ok = r.trace_error < tol.trace;
  r.hermitian_ok = r.hermiticity_error < tol.hermiticity;
  r.positive_ok = r.min_eigenvalue > tol.min_eigenvalue;
  return r;
}

RealVector right_occupation(const Vector& right) {
  const double n2 = right.squaredNorm();
  if (n2 == 0.0) throw DomainError("right_occupation: zero vector");
  return right.cwiseAbs2() / n2;
}

RealVector biorthogonal_occupation(const Vector& left, const Vector& right) {
  if (left.size() != right.size()) throw DimensionError("biorthogonal_occupation: size mismatch");
  const Complex overlap = left.dot(right);
  if (std::abs(overlap) == 0.0) throw DomainError("biorthogonal_occupation: <l|r> = 0");
  const Vector w = left.conjugate().cwiseProduct(right) / overlap;
  return w.real();
}

}  // namespace hnl
