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

#include "hnl/dynamics.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "hnl/linalg.hpp"
#include "hnl/observables.hpp"
#include "hnl/operators.hpp"

namespace hnl {

void PropagationSpec::validate() const {
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw DomainError("t_final must be finite and >= 0");
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (t_final > 0.0 && dt > t_final) throw DomainError("dt must not exceed t_final");
  if (!(rtol > 0.0) || !(atol > 0.0)) throw DomainError("integrator tolerances must be positive");
}

namespace {

constexpr double kIllConditioned = 1e-10;

std::vector<double> sample_times(const PropagationSpec& spec, bool want_trajectory) {
  std::vector<double> times{0.0};
  if (spec.t_final == 0.0) return times;
  if (want_trajectory) {
    const auto steps = static_cast<std::size_t>(std::floor(spec.t_final / spec.dt + 1e-9));
    for (std::size_t k = 1; k <= steps; ++k) times.push_back(static_cast<double>(k) * spec.dt);
  }
  if (spec.t_final - times.back() > 1e-12 * spec.t_final) {
    times.push_back(spec.t_final);
  } else {
    times.back() = spec.t_final;
  }
  return times;
}

/// exp(z) - 1 without cancellation for small |z|.
Complex expm1(Complex z) {
  const double a = z.real();
  const double b = z.imag();
  const double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

std::vector<Vector> exact_samples(const Matrix& lv, const Vector& v0, const std::vector<double>& times) {
  std::vector<Vector> out;
  const EigenSystem es = general_eigen(lv, EigenVectors::right);
  const Eigen::PartialPivLU<Matrix> lu(es.right);
  if (lu.rcond() > kIllConditioned) {
    const Vector coeff = lu.solve(v0);
    for (double t : times) {
      const Vector phase = (es.values * t).array().exp().matrix();
      out.push_back(es.right * phase.cwiseProduct(coeff));
    }
    return out;
  }
  for (double t : times) out.push_back((lv * t).exp() * v0);
  return out;
}

using OdeState = std::vector<Complex>;

std::vector<Vector> adaptive_samples(const Matrix& lv, const Vector& v0,
                                     const std::vector<double>& times, const PropagationSpec& spec) {
  namespace odeint = boost::numeric::odeint;
  OdeState x(v0.data(), v0.data() + v0.size());
  std::vector<Vector> out;
  auto rhs = [&lv](const OdeState& y, OdeState& dydt, double /*t*/) {
    const Eigen::Map<const Vector> ym(y.data(), static_cast<Eigen::Index>(y.size()));
    Eigen::Map<Vector> dm(dydt.data(), static_cast<Eigen::Index>(dydt.size()));
    dm.noalias() = lv * ym;
  };
  auto observer = [&out](const OdeState& y, double /*t*/) {
    out.emplace_back(Eigen::Map<const Vector>(y.data(), static_cast<Eigen::Index>(y.size())));
  };
  if (times.size() == 1) {
    observer(x, 0.0);
    return out;
  }
  using Stepper = odeint::runge_kutta_dopri5<OdeState, double, OdeState, double>;
  auto stepper = odeint::make_dense_output(spec.atol, spec.rtol, Stepper());
  const double first_step = std::min(1e-3, times[1]);
  try {
    odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), first_step, observer,
                            odeint::max_step_checker(10'000'000));
  } catch (const odeint::odeint_error& e) {
    throw ConvergenceError(std::string("adaptive integrator failed: ") + e.what());
  }
  return out;
}

}  // namespace

DensityMatrix propagate_lme(const LiouvillianModel& m, const DensityMatrix& rho0,
                            const PropagationSpec& spec, Trajectory* trajectory) {
  spec.validate();
  if (m.c() != 1.0) throw DomainError("propagate_lme requires a trace-preserving model (c = 1)");
  if (rho0.rows() != static_cast<Eigen::Index>(m.hilbert_dim()) || rho0.cols() != rho0.rows()) {
    throw DimensionError("propagate_lme: rho0 does not match the model dimension");
  }
  const PhysicalityReport phys = validate_physical(rho0);
  if (!phys.ok()) throw DomainError("propagate_lme: rho0 is not a physical state");

  const std::vector<double> times = sample_times(spec, trajectory != nullptr);
  if (spec.t_final == 0.0) {
    if (trajectory) *trajectory = Trajectory{{0.0}, {rho0}};
    return rho0;
  }
  const Matrix& lv = m.matrix().matrix();
  const Vector v0 = vectorize(rho0);
  const std::vector<Vector> samples = spec.method == PropagationMethod::exact_exponential
                                          ? exact_samples(lv, v0, times)
                                          : adaptive_samples(lv, v0, times, spec);
  if (trajectory) {
    trajectory->times = times;
    trajectory->states.clear();
    for (const Vector& s : samples) trajectory->states.push_back(devectorize(s));
  }
  return devectorize(samples.back());
}

NHPropagation propagate_nh(const Operator& h_eff, const Vector& psi0, const PropagationSpec& spec) {
  spec.validate();
  if (h_eff.rows() != h_eff.cols() || h_eff.rows() != psi0.size()) {
    throw DimensionError("propagate_nh: operator and state differ in size");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw DomainError("propagate_nh: psi0 must have unit norm");
  NHPropagation out;
  const double t = spec.t_final;
  Vector psi;
  const EigenSystem es = general_eigen(h_eff, EigenVectors::right);
  const Eigen::PartialPivLU<Matrix> lu(es.right);
  if (lu.rcond() > kIllConditioned) {
    const Vector coeff = lu.solve(psi0);
    const Vector phase = (es.values * (-kI * t)).array().exp().matrix();
    psi = es.right * phase.cwiseProduct(coeff);
  } else {
    out.used_fallback = true;
    out.warning = "eigenvector matrix is ill-conditioned (rcond " + std::to_string(lu.rcond()) +
                  "); used scaling-and-squaring matrix exponential";
    psi = (h_eff * (-kI * t)).exp() * psi0;
  }
  out.norm_before = psi.norm();
  if (!(out.norm_before > 0.0) || !std::isfinite(out.norm_before)) {
    throw ConvergenceError("propagate_nh: state norm collapsed or overflowed");
  }
  out.psi = psi / out.norm_before;
  return out;
}

namespace {

void require_sensor_lattice(const LatticeSpec& lat) {
  lat.validate();
  if (lat.boundary != Boundary::open) throw DomainError("sensor quantities need open boundaries");
  if (lat.n_sites % 2 == 0) throw DomainError("sensor quantities need odd N (zero mode)");
}

/// Gauge-frame Hamiltonian S^-1 (H_HN + V + K) S with S = diag(r^(n-N)).
Matrix gauge_hamiltonian(const LatticeSpec& lat, const HNParams& p, double epsilon,
                         const std::optional<DisorderSpec>& disorder) {
  p.validate();
  const auto n = static_cast<Eigen::Index>(lat.n_sites);
  const double hop = std::sqrt(1.0 - p.delta * p.delta);
  const double log_r = std::log(radial_base(p.delta));
  Matrix h = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    h(k, k + 1) = hop;
    h(k + 1, k) = hop;
  }
  if (disorder) h.diagonal() += disorder_offsets(lat, *disorder).cast<Complex>();
  const double span = static_cast<double>(n - 1) * log_r;
  h(0, n - 1) += epsilon * std::exp(span);
  h(n - 1, 0) += epsilon * std::exp(-span);
  return h;
}

}  // namespace

double log_autocorrelation(const LatticeSpec& lat, const HNParams& p, double epsilon,
                           const std::optional<DisorderSpec>& disorder, double t) {
  require_sensor_lattice(lat);
  const auto n = static_cast<Eigen::Index>(lat.n_sites);
  const Matrix h = gauge_hamiltonian(lat, p, epsilon, disorder);

  // Zero mode of the symmetric chain: sin(n pi/2), n = 1..N.
  Vector phi = Vector::Zero(n);
  for (Eigen::Index k = 0; k < n; k += 2) phi(k) = (k / 2) % 2 == 0 ? 1.0 : -1.0;
  phi /= phi.norm();

  const EigenSystem es = general_eigen(h, EigenVectors::right);
  const Vector coeff = es.right.partialPivLu().solve(phi);
  Vector decay(n);
  for (Eigen::Index k = 0; k < n; ++k) decay(k) = expm1(-kI * es.values(k) * t) * coeff(k);
  const Vector eta = es.right * decay;  // (exp(-iHt) - 1) phi

  const double log_r = std::log(radial_base(p.delta));
  RealVector s(n);
  for (Eigen::Index k = 0; k < n; ++k) s(k) = std::exp(static_cast<double>(k - (n - 1)) * log_r);
  const Vector s_phi = s.cast<Complex>().cwiseProduct(phi);
  const Vector s_eta = s.cast<Complex>().cwiseProduct(eta);

  const Complex z = phi.dot(eta);
  const double num = 0.5 * std::log1p(2.0 * z.real() + std::norm(z));
  const double den =
      0.5 * std::log1p((2.0 * s_phi.dot(s_eta).real() + s_eta.squaredNorm()) / s_phi.squaredNorm());
  return num - den;
}

double autocorrelation(const LatticeSpec& lat, const HNParams& p, double epsilon,
                       const std::optional<DisorderSpec>& disorder, double t) {
  return std::exp(log_autocorrelation(lat, p, epsilon, disorder, t));
}

double autocorrelation_direct(const LatticeSpec& lat, const HNParams& p, double epsilon,
                              const std::optional<DisorderSpec>& disorder, double t) {
  require_sensor_lattice(lat);
  Operator h = build_hn_hamiltonian(lat, p) + build_perturbation(lat, epsilon);
  if (disorder) h += build_disorder(lat, *disorder);
  const std::size_t jz = (lat.n_sites + 1) / 2;
  Vector right = analytic_right_eigenvector(lat, p, jz);
  right /= right.norm();
  Vector left = analytic_left_eigenvector(lat, p, jz);
  left /= std::conj(left.dot(right));  // now <left|right> = 1
  const NHPropagation prop = propagate_nh(h, right, {t, t, PropagationMethod::exact_exponential});
  return std::abs(left.dot(prop.psi));
}

Complex perturbed_zero_shift(const LatticeSpec& lat, const HNParams& p, double epsilon,
                             const std::optional<DisorderSpec>& disorder) {
  require_sensor_lattice(lat);
  const Vector ev = general_eigenvalues(gauge_hamiltonian(lat, p, epsilon, disorder));
  Eigen::Index best = 0;
  ev.cwiseAbs().minCoeff(&best);
  return ev(best);
}

bool past_knee(Complex zero_shift, double ratio) {
  return std::abs(zero_shift.imag()) > ratio * std::abs(zero_shift.real());
}

}  // namespace hnl
