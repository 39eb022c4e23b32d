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

#include "hnl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "hnl/linalg.hpp"
#include "hnl/operators.hpp"
#include "hnl/table.hpp"

namespace hnl {

SpectralResult eig_full(const SuperOperator& m, const SpectralOptions& opt) {
  if (m.dim() > opt.dim_cap) {
    throw DimensionError("eig_full: dimension " + std::to_string(m.dim()) + " exceeds cap " +
                         std::to_string(opt.dim_cap));
  }
  const EigenSystem es =
      general_eigen(m.matrix(), opt.eigenmatrices ? EigenVectors::right : EigenVectors::none);
  SpectralResult r;
  r.tol_zero = opt.tol_zero_rel * m.matrix().norm();
  r.eigenvalues.assign(es.values.data(), es.values.data() + es.values.size());
  for (std::size_t j = 0; j < r.eigenvalues.size(); ++j) {
    if (std::abs(r.eigenvalues[j]) <= r.tol_zero) r.steady_indices.push_back(j);
  }
  if (opt.eigenmatrices) {
    r.right_eigenmatrices.reserve(r.eigenvalues.size());
    for (Eigen::Index j = 0; j < es.right.cols(); ++j) {
      DensityMatrix rho = devectorize(es.right.col(j));
      if (std::abs(r.eigenvalues[static_cast<std::size_t>(j)]) <= r.tol_zero) {
        const Complex tr = rho.trace();
        if (std::abs(tr) > r.tol_zero) rho /= tr;
      }
      r.right_eigenmatrices.push_back(std::move(rho));
    }
  }
  r.gap = liouvillian_gap(r.eigenvalues, r.tol_zero);
  return r;
}

double liouvillian_gap(const std::vector<Complex>& eigenvalues, double tol_zero) {
  double gap = std::numeric_limits<double>::infinity();
  for (const Complex& mu : eigenvalues) {
    if (std::abs(mu) > tol_zero) gap = std::min(gap, std::abs(mu.real()));
  }
  return std::isinf(gap) ? 0.0 : gap;
}

double liouvillian_gap(const SpectralResult& r) { return liouvillian_gap(r.eigenvalues, r.tol_zero); }

namespace {

double relative_residual(const Matrix& lv, double lv_norm, const Vector& x) {
  const double xn = x.norm();
  if (xn == 0.0 || lv_norm == 0.0) return 0.0;
  return (lv * x).norm() / (lv_norm * xn);
}

DensityMatrix hermitized_unit_trace(const Vector& x) {
  DensityMatrix rho = devectorize(x);
  const Complex tr = rho.trace();
  if (std::abs(tr) == 0.0) throw ConvergenceError("steady_state: kernel vector is traceless");
  rho /= tr;
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace

SteadyStateResult steady_state(const SuperOperator& m, const SteadyStateOptions& opt) {
  const Matrix& lv = m.matrix();
  const double lv_norm = lv.norm();
  const NullSpace ns = null_space(lv, opt.tol_zero_rel * lv_norm);
  const auto k = static_cast<std::size_t>(ns.basis.cols());
  if (k == 0) {
    throw ConvergenceError("steady_state: no kernel found; smallest |R_ii| = " +
                           format_double(ns.r_diagonal.size() ? ns.r_diagonal.minCoeff() : 0.0));
  }
  SteadyStateResult out;
  out.multiplicity = k;
  for (std::size_t j = 0; j < k; ++j) {
    out.basis.push_back(devectorize(ns.basis.col(static_cast<Eigen::Index>(j))));
  }

  Vector x;
  if (k == 1) {
    x = ns.basis.col(0);
    if (relative_residual(lv, lv_norm, x) > opt.refine_threshold) {
      const double shift = 1e-12 * lv_norm;
      const Eigen::PartialPivLU<Matrix> lu(lv - shift * Matrix::Identity(lv.rows(), lv.cols()));
      for (int it = 0; it < 3; ++it) {
        x = lu.solve(x);
        x /= x.norm();
      }
      out.refined = true;
    }
  } else {
    // Project vec(I) onto the kernel; for a closed system this yields I/N.
    const Vector id = vectorize(identity(m.hilbert_dim()));
    x = ns.basis * (ns.basis.adjoint() * id);
    if (std::abs(devectorize(x).trace()) < 1e-12 * x.norm()) x = ns.basis.col(0);
  }
  out.rho = hermitized_unit_trace(x);
  out.residual = relative_residual(lv, lv_norm, vectorize(out.rho));
  return out;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionError("fit_line: x and y differ in length");
  if (x.size() < 2) throw DomainError("fit_line: need at least two points");
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_line: x values are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return f;
}

ScalingFit gap_scaling_fit(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3) throw DomainError("gap_scaling_fit: need at least three samples");
  std::vector<double> lx, ly;
  for (const auto& [n, gap] : samples) {
    if (!(gap > 0.0) || !(n > 0.0)) {
      throw DomainError("gap_scaling_fit: sizes and gaps must be positive");
    }
    lx.push_back(std::log(n));
    ly.push_back(std::log(gap));
  }
  const LinearFit f = fit_line(lx, ly);
  ScalingFit s;
  s.exponent = -1.0 / f.slope;
  s.intercept = f.intercept;
  s.r_squared = f.r_squared;
  s.samples = samples;
  return s;
}

namespace {

double directed_hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (const Complex& x : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& y : b) best = std::min(best, std::norm(x - y));
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

}  // namespace

double spectral_displacement(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) throw DimensionError("spectral_displacement: spectra differ in size");
  if (a.empty()) return 0.0;
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double spectral_displacement(const SpectralResult& unperturbed, const SpectralResult& perturbed) {
  return spectral_displacement(unperturbed.eigenvalues, perturbed.eigenvalues);
}

void write_spectral_csv(std::ostream& os, const SpectralResult& r) {
  os << "index,re_mu,im_mu,trace_re,trace_im,is_steady\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t j = 0; j < r.eigenvalues.size(); ++j) {
    const Complex tr = j < r.right_eigenmatrices.size() ? r.right_eigenmatrices[j].trace()
                                                         : Complex{nan, nan};
    const bool steady = std::abs(r.eigenvalues[j]) <= r.tol_zero;
    os << j << ',' << format_double(r.eigenvalues[j].real()) << ','
       << format_double(r.eigenvalues[j].imag()) << ',' << format_double(tr.real()) << ','
       << format_double(tr.imag()) << ',' << (steady ? "true" : "false") << '\n';
  }
}

}  // namespace hnl
