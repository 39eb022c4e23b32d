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

#include "hnl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hnl/dynamics.hpp"
#include "hnl/observables.hpp"
#include "hnl/operators.hpp"
#include "hnl/spectral.hpp"
#include "hnl/worker_pool.hpp"

#ifndef HNL_VERSION
#define HNL_VERSION "unknown"
#endif

namespace hnl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::pair<Scenario, std::string>>& scenario_names() {
  static const std::vector<std::pair<Scenario, std::string>> names{
      {Scenario::skin_scan, "skin-scan"},
      {Scenario::gap_scan, "gap-scan"},
      {Scenario::gap_scaling, "gap-scaling"},
      {Scenario::fock_lattice, "fock-lattice"},
      {Scenario::sensor, "sensor"},
      {Scenario::sensor_disorder, "sensor-disorder"},
      {Scenario::perturbed_spectrum, "perturbed-spectrum"},
      {Scenario::ssh_scan, "ssh-scan"},
      {Scenario::bistability, "bistability"},
  };
  return names;
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

std::string jumps_name(JumpKind k) { return k == JumpKind::collective ? "collective" : "local"; }
std::string form_name(LocalJumpForm f) { return f == LocalJumpForm::block ? "block" : "literal"; }
std::string boundary_name(Boundary b) { return b == Boundary::open ? "open" : "periodic"; }
std::string model_name(BistabilityModel m) { return m == BistabilityModel::spin ? "spin" : "euclid"; }

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

LiouvillianModel lme_for(const ExperimentConfig& cfg, std::size_t n, double gamma) {
  const LatticeSpec lat{n, cfg.boundary};
  LiouvillianModel m = build_hn_lme(lat, gamma, cfg.jumps, cfg.local_form);
  return cfg.c == 1.0 ? m : m.with_c(cfg.c);
}

struct GridPoint {
  std::size_t n;
  double gamma;
};

std::vector<GridPoint> grid(const std::vector<std::size_t>& ns, const std::vector<double>& gammas) {
  std::vector<GridPoint> g;
  for (std::size_t n : ns) {
    for (double gamma : gammas) g.push_back({n, gamma});
  }
  return g;
}

void fail(const std::string& msg) { throw ConfigError(msg); }

}  // namespace

std::string to_string(Scenario s) {
  for (const auto& [k, name] : scenario_names()) {
    if (k == s) return name;
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& name) {
  for (const auto& [k, n] : scenario_names()) {
    if (n == name) return k;
  }
  throw ConfigError("unknown scenario '" + name + "'");
}

const std::vector<Scenario>& all_scenarios() {
  static const std::vector<Scenario> all = [] {
    std::vector<Scenario> v;
    for (const auto& [k, name] : scenario_names()) v.push_back(k);
    return v;
  }();
  return all;
}

std::vector<double> step_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw ConfigError("grid needs step > 0 and hi >= lo");
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::size_t k = 0; k < count; ++k) {
    const double v = lo + static_cast<double>(k) * step;
    out.push_back(std::round(v * 1e12) / 1e12);
  }
  return out;
}

std::vector<std::size_t> odd_range(std::size_t lo, std::size_t hi, std::size_t step) {
  if (step == 0 || step % 2 != 0) throw ConfigError("odd_range step must be even and positive");
  if (lo % 2 == 0) ++lo;
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; n += step) out.push_back(n);
  return out;
}

ExperimentConfig ExperimentConfig::defaults(Scenario s) {
  ExperimentConfig c;
  c.scenario = s;
  const std::vector<double> gammas = step_grid(0.05, 0.95, 0.05);
  switch (s) {
    case Scenario::skin_scan:
      c.n_list = {21, 41};
      c.gamma_grid = gammas;
      break;
    case Scenario::gap_scan:
      c.n_list = {21};
      c.gamma_grid = gammas;
      break;
    case Scenario::gap_scaling:
      c.n_list = {11, 21, 31, 41};
      c.gamma_grid = {0.5};
      break;
    case Scenario::fock_lattice:
      c.n_list = {7};
      c.gamma_grid = {0.3};
      break;
    case Scenario::sensor:
      c.n_list = odd_range(5, 241, 4);
      c.delta_list = {0.1, 0.25, 0.5, 0.75};
      break;
    case Scenario::sensor_disorder:
      c.n_list = odd_range(5, 121, 4);
      c.delta_list = {0.25};
      c.disorder_w = {5e-4};
      break;
    case Scenario::perturbed_spectrum:
      c.n_list = {61};
      c.delta_list = {0.25, 0.75};
      break;
    case Scenario::ssh_scan:
      c.n_list = {41};
      c.gamma_grid = gammas;
      c.chi_list = {-0.5, -0.1, 0.1, 0.5};
      break;
    case Scenario::bistability:
      c.n_list = {41};
      c.gamma_grid = step_grid(0.05, 1.5, 0.05);
      break;
  }
  return c;
}

void ExperimentConfig::validate() const {
  const std::string where = to_string(scenario) + ": ";
  if (n_list.empty()) fail(where + "N list is empty");
  for (std::size_t n : n_list) {
    if (n < 2) fail(where + "every N must be >= 2");
  }
  if (!(c >= 0.0 && c <= 1.0)) fail(where + "c must lie in [0, 1]");
  if (workers == 0) fail(where + "workers must be >= 1");
  if (realizations < 1) fail(where + "realizations must be >= 1");
  if (!(t > 0.0) || !std::isfinite(t)) fail(where + "t must be positive and finite");
  if (!std::isfinite(epsilon)) fail(where + "epsilon must be finite");
  if (jumps == JumpKind::local && boundary != Boundary::open) {
    fail(where + "local jumps require open boundaries");
  }

  const bool needs_gamma = scenario == Scenario::skin_scan || scenario == Scenario::gap_scan ||
                           scenario == Scenario::gap_scaling || scenario == Scenario::fock_lattice ||
                           scenario == Scenario::ssh_scan || scenario == Scenario::bistability;
  if (needs_gamma && gamma_grid.empty()) fail(where + "gamma grid is empty");
  const bool lme_gamma = needs_gamma && scenario != Scenario::bistability;
  for (double g : gamma_grid) {
    if (!(g >= 0.0)) fail(where + "gamma must be >= 0");
    if (lme_gamma && g > 1.0) fail(where + "gamma must lie in [0, 1]");
  }

  const bool needs_delta = scenario == Scenario::sensor || scenario == Scenario::sensor_disorder ||
                           scenario == Scenario::perturbed_spectrum;
  if (needs_delta) {
    if (delta_list.empty()) fail(where + "delta list is empty");
    for (double d : delta_list) {
      if (!(d >= 0.0 && d < 1.0)) fail(where + "delta must lie in [0, 1)");
    }
    if (boundary != Boundary::open) fail(where + "sensor scenarios need open boundaries");
  }

  switch (scenario) {
    case Scenario::gap_scaling:
      if (n_list.size() < 3) fail(where + "need at least three N values for the fit");
      break;
    case Scenario::fock_lattice:
      if (jumps != JumpKind::collective) fail(where + "needs the collective jump set");
      if (boundary != Boundary::open) fail(where + "needs open boundaries");
      for (std::size_t n : n_list) {
        if (n < 4) fail(where + "N must be >= 4");
      }
      break;
    case Scenario::sensor:
    case Scenario::sensor_disorder:
      for (std::size_t n : n_list) {
        if (n % 2 == 0) fail(where + "N must be odd (zero mode)");
      }
      if (scenario == Scenario::sensor_disorder) {
        if (disorder_w.empty()) fail(where + "disorder strength list is empty");
        for (double w : disorder_w) {
          if (!(w >= 0.0) || !std::isfinite(w)) fail(where + "disorder strength must be >= 0");
        }
        if (realizations < 2) fail(where + "need at least two realizations");
      }
      break;
    case Scenario::perturbed_spectrum:
      for (std::size_t n : n_list) {
        if (n * n > 4096) fail(where + "N^2 exceeds the dense eigensolver cap 4096");
      }
      break;
    case Scenario::ssh_scan:
      if (chi_list.empty()) fail(where + "chi list is empty");
      for (double x : chi_list) {
        if (!(std::abs(x) < 1.0)) fail(where + "chi must satisfy |chi| < 1");
      }
      break;
    case Scenario::bistability:
      if (bistability_model == BistabilityModel::spin) {
        const double twice = 2.0 * total_spin;
        if (!(total_spin > 0.0) || std::abs(twice - std::round(twice)) > 1e-12) {
          fail(where + "total spin must be a positive integer or half-integer");
        }
      }
      break;
    default:
      break;
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"scenario", to_string(scenario)},
          {"n_list", n_list},
          {"gamma_grid", gamma_grid},
          {"delta_list", delta_list},
          {"chi_list", chi_list},
          {"c", c},
          {"jumps", jumps_name(jumps)},
          {"local_form", form_name(local_form)},
          {"boundary", boundary_name(boundary)},
          {"epsilon", epsilon},
          {"disorder_w", disorder_w},
          {"realizations", realizations},
          {"seed", seed},
          {"t", t},
          {"bistability_model", model_name(bistability_model)},
          {"total_spin", total_spin},
          {"with_gap", with_gap},
          {"emit_spectrum", emit_spectrum},
          {"window_rule",
           {{"noise_factor", window.noise_factor},
            {"slope_tolerance", window.slope_tolerance},
            {"knee_ratio", window.knee_ratio},
            {"decay_floor", window.decay_floor}}}};
}

const Table& ExperimentOutput::table(const std::string& name) const {
  for (const Table& t : tables) {
    if (t.name() == name) return t;
  }
  throw std::out_of_range("no table named '" + name + "'");
}

// ---------------------------------------------------------------------------
// skin-scan

ExperimentOutput run_skin_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<GridPoint> pts = grid(cfg.n_list, cfg.gamma_grid);
  auto rows = parallel_map(pts.size(), cfg.workers, [&](std::size_t i) {
    const auto [n, gamma] = pts[i];
    const LiouvillianModel m = lme_for(cfg, n, gamma);
    const SteadyStateResult ss = steady_state(m.matrix());
    const DensityMatrix& rho = ss.rho;
    double xi_hn = kNaN, fid = kNaN;
    if (cfg.boundary == Boundary::open && gamma < 1.0) {
      const LatticeSpec lat{n, Boundary::open};
      const Vector phi = normalized_right_eigenvector(lat, HNParams{gamma}, n);
      xi_hn = scaled_position(phi * phi.adjoint());
      fid = fidelity_with_pure(phi, rho);
    }
    return std::vector<Cell>{as_int(n),
                             gamma,
                             scaled_position(rho),
                             scaled_position(rho, XiNormalization::lattice_size),
                             xi_hn,
                             purity(rho),
                             fid,
                             width(rho),
                             as_int(ss.multiplicity),
                             validate_physical(rho).ok()};
  });
  ExperimentOutput out;
  out.scenario = Scenario::skin_scan;
  Table t("skin_scan", {"N", "gamma", "xi_lme", "xi_lme_over_n", "xi_hn", "purity", "fidelity",
                        "width", "multiplicity", "physical"});
  for (auto& r : rows) t.add_row(std::move(r));
  out.tables.push_back(std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// gap-scan and gap-scaling

namespace {

struct GapPoint {
  double gap = 0.0;
  std::size_t n_steady = 0;
  std::vector<Complex> eigenvalues;
};

GapPoint gap_point(const ExperimentConfig& cfg, std::size_t n, double gamma, bool keep_spectrum) {
  const LiouvillianModel m = lme_for(cfg, n, gamma);
  SpectralOptions opt;
  opt.eigenmatrices = false;
  SpectralResult r = eig_full(m.matrix(), opt);
  GapPoint p{r.gap, r.steady_indices.size(), {}};
  if (keep_spectrum) p.eigenvalues = std::move(r.eigenvalues);
  return p;
}

}  // namespace

ExperimentOutput run_gap_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<GridPoint> pts = grid(cfg.n_list, cfg.gamma_grid);
  auto res = parallel_map(pts.size(), cfg.workers,
                          [&](std::size_t i) { return gap_point(cfg, pts[i].n, pts[i].gamma, false); });
  ExperimentOutput out;
  out.scenario = Scenario::gap_scan;
  Table t("gap_scan", {"N", "gamma", "gap", "n_steady"});
  for (std::size_t i = 0; i < pts.size(); ++i) {
    t.add_row({as_int(pts[i].n), pts[i].gamma, res[i].gap, as_int(res[i].n_steady)});
  }
  out.tables.push_back(std::move(t));
  return out;
}

ExperimentOutput run_gap_scaling(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<GridPoint> pts = grid(cfg.n_list, cfg.gamma_grid);
  auto res = parallel_map(pts.size(), cfg.workers, [&](std::size_t i) {
    return gap_point(cfg, pts[i].n, pts[i].gamma, cfg.emit_spectrum);
  });
  ExperimentOutput out;
  out.scenario = Scenario::gap_scaling;
  Table gaps("gaps", {"N", "gamma", "gap", "n_steady"});
  Table spectrum("spectrum", {"N", "gamma", "re_mu", "im_mu"});
  for (std::size_t i = 0; i < pts.size(); ++i) {
    gaps.add_row({as_int(pts[i].n), pts[i].gamma, res[i].gap, as_int(res[i].n_steady)});
    for (const Complex& mu : res[i].eigenvalues) {
      spectrum.add_row({as_int(pts[i].n), pts[i].gamma, mu.real(), mu.imag()});
    }
  }
  Table fits("fits", {"gamma", "nu", "intercept", "r_squared", "gap_spread"});
  nlohmann::json summary = nlohmann::json::array();
  for (double gamma : cfg.gamma_grid) {
    std::vector<std::pair<double, double>> samples;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].gamma == gamma) samples.emplace_back(static_cast<double>(pts[i].n), res[i].gap);
    }
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end(),
                                              [](const auto& a, const auto& b) { return a.second < b.second; });
    const double spread = mx->second > 0.0 ? (mx->second - mn->second) / mx->second : kNaN;
    const ScalingFit fit = gap_scaling_fit(samples);
    fits.add_row({gamma, fit.exponent, fit.intercept, fit.r_squared, spread});
    summary.push_back({{"gamma", gamma}, {"nu", fit.exponent}, {"r_squared", fit.r_squared},
                       {"gap_spread", spread}});
  }
  out.summary["fits"] = summary;
  out.tables.push_back(std::move(gaps));
  out.tables.push_back(std::move(fits));
  if (cfg.emit_spectrum) out.tables.push_back(std::move(spectrum));
  return out;
}

// ---------------------------------------------------------------------------
// fock-lattice

ExperimentOutput run_fock_lattice(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentOutput out;
  out.scenario = Scenario::fock_lattice;
  Table checks("fock_parameters", {"N", "gamma", "c", "parameter", "extracted", "expected", "error", "pass"});
  nlohmann::json params = nlohmann::json::array();
  for (std::size_t n : cfg.n_list) {
    for (double gamma : cfg.gamma_grid) {
      const LiouvillianModel m = lme_for(cfg, n, gamma);
      FockLatticeView view = fock_lattice_view(m);
      for (const TableCheck& c : verify_fock_parameters(view, gamma)) {
        checks.add_row({as_int(n), gamma, cfg.c, c.name, c.extracted, c.expected, c.error, c.pass});
      }
      nlohmann::json p = to_json(extract_parameters(view));
      p["N"] = n;
      p["gamma"] = gamma;
      params.push_back(std::move(p));
      if (!out.fock_view) out.fock_view = std::move(view);
    }
  }
  out.summary["parameters"] = params;
  out.tables.push_back(std::move(checks));
  return out;
}

// ---------------------------------------------------------------------------
// sensor

std::vector<SensorPoint> sensor_sweep(const std::vector<std::size_t>& n_list, double delta,
                                      double epsilon, double t, double knee_ratio,
                                      std::size_t workers) {
  return parallel_map(n_list.size(), workers, [&](std::size_t i) {
    const LatticeSpec lat{n_list[i], Boundary::open};
    const HNParams p{delta};
    SensorPoint s;
    s.n = n_list[i];
    s.log_a = log_autocorrelation(lat, p, epsilon, std::nullopt, t);
    s.zero_shift = perturbed_zero_shift(lat, p, epsilon);
    s.knee = epsilon != 0.0 && past_knee(s.zero_shift, knee_ratio);
    return s;
  });
}

SensorTrace analyze_sensor_trace(const std::vector<SensorPoint>& points, double delta,
                                 const WindowRule& rule) {
  SensorTrace tr;
  tr.delta = delta;
  std::vector<double> x, y;
  for (const SensorPoint& s : points) {
    if (s.knee) {
      tr.knee_n = s.n;
      break;
    }
    if (std::abs(s.log_a) > rule.decay_floor) {
      x.push_back(static_cast<double>(s.n));
      y.push_back(std::log10(std::abs(s.log_a)));
    }
  }
  tr.fit_points = x.size();
  if (x.size() >= 3) {
    tr.fit = fit_line(x, y);
    tr.fit_n_min = static_cast<std::size_t>(x.front());
    tr.fit_n_max = static_cast<std::size_t>(x.back());
  } else {
    tr.fit = {kNaN, kNaN, kNaN};
  }
  return tr;
}

ExperimentOutput run_sensor(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentOutput out;
  out.scenario = Scenario::sensor;
  Table t("sensor", {"N", "delta", "log_A", "log10_decay", "re_dnu", "im_dnu", "knee_flag"});
  Table fits("sensor_fits", {"delta", "slope", "intercept", "r_squared", "fit_points", "fit_n_min",
                             "fit_n_max", "knee_n"});
  nlohmann::json traces = nlohmann::json::array();
  for (double delta : cfg.delta_list) {
    const auto pts = sensor_sweep(cfg.n_list, delta, cfg.epsilon, cfg.t, cfg.window.knee_ratio, cfg.workers);
    for (const SensorPoint& s : pts) {
      const double decay = s.log_a == 0.0 ? -std::numeric_limits<double>::infinity()
                                          : std::log10(std::abs(s.log_a));
      t.add_row({as_int(s.n), delta, s.log_a, decay, s.zero_shift.real(), s.zero_shift.imag(), s.knee});
    }
    const SensorTrace tr = analyze_sensor_trace(pts, delta, cfg.window);
    const std::int64_t knee = tr.knee_n ? as_int(*tr.knee_n) : -1;
    fits.add_row({delta, tr.fit.slope, tr.fit.intercept, tr.fit.r_squared, as_int(tr.fit_points),
                  as_int(tr.fit_n_min), as_int(tr.fit_n_max), knee});
    traces.push_back({{"delta", delta}, {"slope", tr.fit.slope}, {"r_squared", tr.fit.r_squared},
                      {"knee_n", knee}});
  }
  out.summary["traces"] = traces;
  out.tables.push_back(std::move(t));
  out.tables.push_back(std::move(fits));
  return out;
}

// ---------------------------------------------------------------------------
// sensor-disorder

std::vector<EnsemblePoint> sensor_ensemble(const std::vector<std::size_t>& n_list, double delta,
                                           double strength, double epsilon,
                                           std::size_t realizations, std::uint64_t seed, double t,
                                           const WindowRule& rule, std::size_t workers) {
  const std::size_t count = n_list.size() * realizations;
  const auto samples = parallel_map(count, workers, [&](std::size_t i) {
    const LatticeSpec lat{n_list[i / realizations], Boundary::open};
    const DisorderSpec d{strength, seed, i % realizations};
    const HNParams p{delta};
    return std::pair<double, double>{log_autocorrelation(lat, p, epsilon, d, t),
                                     log_autocorrelation(lat, p, 0.0, d, t)};
  });
  const auto clean = sensor_sweep(n_list, delta, epsilon, t, rule.knee_ratio, workers);
  std::vector<EnsemblePoint> out;
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    std::vector<double> with, without, absolute;
    for (std::size_t r = 0; r < realizations; ++r) {
      const auto& [a, b] = samples[k * realizations + r];
      with.push_back(a);
      without.push_back(b);
      absolute.push_back(std::abs(a));
    }
    EnsemblePoint e;
    e.n = n_list[k];
    e.mean_log_a = mean_of(with);
    e.std_log_a = sample_std(with);
    e.mean_abs_log_a = mean_of(absolute);
    e.noise_mean = mean_of(without);
    e.noise_std = strength == 0.0 ? 0.0 : sample_std(without);
    e.clean_log_a = clean[k].log_a;
    e.clean_knee = clean[k].knee;
    out.push_back(e);
  }
  return out;
}

SensorWindow detect_window(const std::vector<EnsemblePoint>& points, const WindowRule& rule) {
  SensorWindow w;
  std::ostringstream desc;
  desc << "N_l: first N with mean|lnA| > " << format_double(rule.noise_factor)
       << " * std(lnA at epsilon=0); N_u: last N before the clean-chain knee (|Im dnu| > "
       << format_double(rule.knee_ratio) << " |Re dnu|) or before the local slope of "
       << "log10(mean|lnA|) deviates by more than " << format_double(rule.slope_tolerance)
       << " from the first slope after N_l above |lnA| = " << format_double(rule.decay_floor);
  w.rule = desc.str();

  std::size_t lo = points.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const EnsemblePoint& p = points[i];
    if (p.noise_std == 0.0 || p.mean_abs_log_a > rule.noise_factor * p.noise_std) {
      lo = i;
      break;
    }
  }
  if (lo == points.size()) return w;
  w.n_lower = points[lo].n;
  if (points[lo].clean_knee) return w;

  auto level = [&](std::size_t i) { return std::log10(points[i].mean_abs_log_a); };
  auto above = [&](std::size_t i) { return points[i].mean_abs_log_a > rule.decay_floor; };
  auto local_slope = [&](std::size_t i) {
    return (level(i) - level(i - 1)) / static_cast<double>(points[i].n - points[i - 1].n);
  };

  std::size_t hi = lo;
  std::optional<double> reference;
  for (std::size_t j = lo + 1; j < points.size(); ++j) {
    if (points[j].clean_knee) break;
    if (above(j) && above(j - 1)) {
      const double s = local_slope(j);
      if (!reference) {
        reference = s;
      } else if (std::abs(s - *reference) > rule.slope_tolerance * std::abs(*reference)) {
        break;
      }
    }
    hi = j;
  }
  w.n_upper = points[hi].n;

  std::vector<double> x, y;
  for (std::size_t i = lo; i <= hi; ++i) {
    if (above(i)) {
      x.push_back(static_cast<double>(points[i].n));
      y.push_back(level(i));
    }
  }
  w.slope = x.size() >= 2 ? fit_line(x, y).slope : (reference ? *reference : kNaN);
  return w;
}

ExperimentOutput run_sensor_disorder(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentOutput out;
  out.scenario = Scenario::sensor_disorder;
  Table t("ensemble", {"N", "delta", "W", "mean_log_A", "std_log_A", "mean_abs_log_A",
                       "noise_mean_log_A", "noise_std_log_A", "clean_log_A", "knee_flag"});
  Table windows("windows", {"delta", "W", "N_lower", "N_upper", "slope", "empty"});
  nlohmann::json summary = nlohmann::json::array();
  for (double delta : cfg.delta_list) {
    for (double strength : cfg.disorder_w) {
      const auto pts = sensor_ensemble(cfg.n_list, delta, strength, cfg.epsilon, cfg.realizations,
                                       cfg.seed, cfg.t, cfg.window, cfg.workers);
      for (const EnsemblePoint& e : pts) {
        t.add_row({as_int(e.n), delta, strength, e.mean_log_a, e.std_log_a, e.mean_abs_log_a,
                   e.noise_mean, e.noise_std, e.clean_log_a, e.clean_knee});
      }
      const SensorWindow w = detect_window(pts, cfg.window);
      const std::int64_t nl = w.n_lower ? as_int(*w.n_lower) : -1;
      const std::int64_t nu = w.n_upper ? as_int(*w.n_upper) : -1;
      windows.add_row({delta, strength, nl, nu, w.slope, w.empty()});
      summary.push_back({{"delta", delta}, {"W", strength}, {"N_lower", nl}, {"N_upper", nu},
                         {"empty", w.empty()}});
      out.summary["window_rule"] = w.rule;
    }
  }
  out.summary["windows"] = summary;
  out.tables.push_back(std::move(t));
  out.tables.push_back(std::move(windows));
  return out;
}

// ---------------------------------------------------------------------------
// perturbed-spectrum

ExperimentOutput run_perturbed_spectrum(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentOutput out;
  out.scenario = Scenario::perturbed_spectrum;
  struct Task {
    std::size_t n;
    double delta;
    bool perturbed;
  };
  std::vector<Task> tasks;
  for (std::size_t n : cfg.n_list) {
    for (double d : cfg.delta_list) {
      tasks.push_back({n, d, false});
      tasks.push_back({n, d, true});
    }
  }
  auto spectra = parallel_map(tasks.size(), cfg.workers, [&](std::size_t i) {
    const Task& task = tasks[i];
    const LatticeSpec lat{task.n, Boundary::open};
    LiouvillianModel base = build_hn_lme(lat, task.delta, JumpKind::collective);
    Operator h = base.hamiltonian();
    if (task.perturbed) h += build_perturbation(lat, cfg.epsilon);
    const LiouvillianModel m(std::move(h), base.jumps(), cfg.c);
    SpectralOptions opt;
    opt.eigenmatrices = false;
    return eig_full(m.matrix(), opt).eigenvalues;
  });
  Table disp("displacement", {"N", "delta", "epsilon", "displacement"});
  Table spec("spectra", {"N", "delta", "perturbed", "re_mu", "im_mu"});
  nlohmann::json summary = nlohmann::json::array();
  for (std::size_t i = 0; i < tasks.size(); i += 2) {
    const double d = spectral_displacement(spectra[i], spectra[i + 1]);
    disp.add_row({as_int(tasks[i].n), tasks[i].delta, cfg.epsilon, d});
    summary.push_back({{"N", tasks[i].n}, {"delta", tasks[i].delta}, {"displacement", d}});
    for (std::size_t k = i; k <= i + 1; ++k) {
      for (const Complex& mu : spectra[k]) {
        spec.add_row({as_int(tasks[k].n), tasks[k].delta, tasks[k].perturbed, mu.real(), mu.imag()});
      }
    }
  }
  out.summary["displacements"] = summary;
  out.tables.push_back(std::move(disp));
  out.tables.push_back(std::move(spec));
  return out;
}

// ---------------------------------------------------------------------------
// ssh-scan

TransitionMetrics transition_metrics(const std::vector<double>& gamma,
                                     const std::vector<double>& order) {
  if (gamma.size() != order.size() || gamma.size() < 2) {
    throw DimensionError("transition_metrics: need matching grids of length >= 2");
  }
  const double base = order.front();
  const double top = *std::max_element(order.begin(), order.end());
  TransitionMetrics tm{kNaN, kNaN, kNaN, kNaN};
  if (!(top > base)) return tm;
  auto crossing = [&](double frac) {
    const double level = base + frac * (top - base);
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (order[k] >= level) {
        const double w = (level - order[k - 1]) / (order[k] - order[k - 1]);
        return gamma[k - 1] + w * (gamma[k] - gamma[k - 1]);
      }
    }
    return kNaN;
  };
  tm.gamma_10 = crossing(0.1);
  tm.gamma_50 = crossing(0.5);
  tm.gamma_90 = crossing(0.9);
  tm.relative_width = (tm.gamma_90 - tm.gamma_10) / tm.gamma_50;
  return tm;
}

ExperimentOutput run_ssh_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Task {
    std::size_t n;
    double chi;
    double gamma;
  };
  std::vector<Task> tasks;
  for (std::size_t n : cfg.n_list) {
    for (double chi : cfg.chi_list) {
      for (double g : cfg.gamma_grid) tasks.push_back({n, chi, g});
    }
  }
  auto rows = parallel_map(tasks.size(), cfg.workers, [&](std::size_t i) {
    const Task& task = tasks[i];
    const LatticeSpec lat{task.n, cfg.boundary};
    LiouvillianModel m = build_ssh_lme(lat, SSHParams{task.chi}, task.gamma);
    if (cfg.c != 1.0) m = m.with_c(cfg.c);
    const SteadyStateResult ss = steady_state(m.matrix());
    double gap = kNaN;
    if (cfg.with_gap) {
      SpectralOptions opt;
      opt.eigenmatrices = false;
      gap = eig_full(m.matrix(), opt).gap;
    }
    return std::vector<Cell>{as_int(task.n), task.gamma, task.chi, scaled_position(ss.rho),
                             width(ss.rho), gap, purity(ss.rho), validate_physical(ss.rho).ok()};
  });
  ExperimentOutput out;
  out.scenario = Scenario::ssh_scan;
  Table t("ssh_scan", {"N", "gamma", "chi", "xi", "width", "gap", "purity", "physical"});
  Table tr("transitions", {"N", "chi", "gamma_10", "gamma_50", "gamma_90", "relative_width",
                           "small_gamma_width", "max_width"});
  std::size_t k = 0;
  for (std::size_t n : cfg.n_list) {
    for (double chi : cfg.chi_list) {
      std::vector<double> gs, xs;
      double first_width = kNaN;
      for (std::size_t g = 0; g < cfg.gamma_grid.size(); ++g, ++k) {
        gs.push_back(std::get<double>(rows[k][1]));
        xs.push_back(std::get<double>(rows[k][3]));
        if (g == 0) first_width = std::get<double>(rows[k][4]);
        t.add_row(std::move(rows[k]));
      }
      const TransitionMetrics m = transition_metrics(gs, xs);
      tr.add_row({as_int(n), chi, m.gamma_10, m.gamma_50, m.gamma_90, m.relative_width, first_width,
                  max_width(n)});
    }
  }
  out.tables.push_back(std::move(t));
  out.tables.push_back(std::move(tr));
  return out;
}

// ---------------------------------------------------------------------------
// bistability

ExperimentOutput run_bistability(const ExperimentConfig& cfg) {
  cfg.validate();
  auto rows = parallel_map(cfg.gamma_grid.size(), cfg.workers, [&](std::size_t i) {
    const double gamma = cfg.gamma_grid[i];
    double order = 0.0;
    DensityMatrix rho;
    if (cfg.bistability_model == BistabilityModel::spin) {
      const SpinBistabilityModel sm = build_spin_bistability({cfg.total_spin, gamma});
      JumpSet js;
      js.jumps.push_back({sm.jump, sm.rate, "S-"});
      const LiouvillianModel m(sm.hamiltonian, js, cfg.c);
      rho = steady_state(m.matrix()).rho;
      order = (rho * sm.sz).trace().real() / cfg.total_spin;
    } else {
      const EuclideanAlgebra e = build_euclidean({cfg.n_list.front(), Boundary::open});
      JumpSet js;
      js.jumps.push_back({e.e, gamma, "E"});
      const LiouvillianModel m(e.ex, js, cfg.c);
      rho = steady_state(m.matrix()).rho;
      order = scaled_position(rho);
    }
    return std::vector<Cell>{model_name(cfg.bistability_model), gamma, order,
                             validate_physical(rho).ok()};
  });
  ExperimentOutput out;
  out.scenario = Scenario::bistability;
  Table t("bistability", {"model", "gamma", "order_parameter", "physical"});
  for (auto& r : rows) t.add_row(std::move(r));
  out.tables.push_back(std::move(t));
  return out;
}

// ---------------------------------------------------------------------------

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::skin_scan: return run_skin_scan(cfg);
    case Scenario::gap_scan: return run_gap_scan(cfg);
    case Scenario::gap_scaling: return run_gap_scaling(cfg);
    case Scenario::fock_lattice: return run_fock_lattice(cfg);
    case Scenario::sensor: return run_sensor(cfg);
    case Scenario::sensor_disorder: return run_sensor_disorder(cfg);
    case Scenario::perturbed_spectrum: return run_perturbed_spectrum(cfg);
    case Scenario::ssh_scan: return run_ssh_scan(cfg);
    case Scenario::bistability: return run_bistability(cfg);
  }
  throw ConfigError("unhandled scenario");
}

nlohmann::json experiment_metadata(const ExperimentConfig& cfg, const ExperimentOutput& out) {
  nlohmann::json conventions = {
      {"vectorization", "row-major, |n><m| -> l = N(n-1)+m (1-based)"},
      {"liouvillian", "-i(H(x)I - I(x)H^T) + sum g[2c L(x)L* - L^dag L(x)I - I(x)(L^dag L)^T]"},
      {"collective_jumps", "L_c = I + i sum |n+1><n|, L_1 = |1><1|, equal rates"},
      {"local_jumps", cfg.local_form == LocalJumpForm::block ? "L_n = n_n + n_{n+1} + i|n+1><n|"
                                                             : "L_n = n_n + i|n+1><n|"},
      {"gap", "min |Re mu| over |mu| > tol_zero"},
      {"tol_zero", "1e-10 * ||L_v||_F"},
      {"xi", "Tr[rho S]/((N-1)/2), S = diag(-(N-1)/2..(N-1)/2); xi_lme_over_n divides by N"},
      {"radial_base", "sqrt((1+delta)/(1-delta))"},
      {"autocorrelation",
       "A = |<phi_z^L|psi(t)>|, <phi_z^L|phi_z^R> = 1, ||phi_z^R|| = 1, psi renormalized; "
       "log_A = ln A, log10_decay = log10|ln A|"},
  };
  return {{"scenario", to_string(cfg.scenario)},
          {"code_version", HNL_VERSION},
          {"config", cfg.to_json()},
          {"conventions", conventions},
          {"summary", out.summary}};
}

}  // namespace hnl
