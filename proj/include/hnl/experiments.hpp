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

// Named scenarios that sweep the library over parameter grids and collect the
// results into tables. Every scenario is deterministic for a fixed config;
// the worker count changes wall time only.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hnl/fock_lattice.hpp"
#include "hnl/liouvillian.hpp"
#include "hnl/models.hpp"
#include "hnl/spectral.hpp"
#include "hnl/table.hpp"

namespace hnl {

enum class Scenario {
  skin_scan,
  gap_scan,
  gap_scaling,
  fock_lattice,
  sensor,
  sensor_disorder,
  perturbed_spectrum,
  ssh_scan,
  bistability,
};

[[nodiscard]] std::string to_string(Scenario s);
[[nodiscard]] Scenario parse_scenario(const std::string& name);
[[nodiscard]] const std::vector<Scenario>& all_scenarios();

/// Invalid or incomplete experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class BistabilityModel { spin, euclid };

/// Thresholds of the sensor operating-window rule.
struct WindowRule {
  double noise_factor = 2.0;     // signal must exceed this many noise standard deviations
  double slope_tolerance = 0.2;  // relative deviation of the local slope that ends the window
  double knee_ratio = 1e-3;      // |Im dnu| > ratio |Re dnu| marks the knee
  double decay_floor = 1e-12;    // |ln A| below this is treated as numerical noise
};

struct ExperimentConfig {
  Scenario scenario = Scenario::skin_scan;
  std::vector<std::size_t> n_list;
  std::vector<double> gamma_grid;
  std::vector<double> delta_list;
  std::vector<double> chi_list;
  double c = 1.0;
  JumpKind jumps = JumpKind::collective;
  LocalJumpForm local_form = LocalJumpForm::block;
  Boundary boundary = Boundary::open;
  double epsilon = 1e-10;
  std::vector<double> disorder_w;
  std::size_t realizations = 1000;
  std::uint64_t seed = 20240601;
  double t = 10.0;
  BistabilityModel bistability_model = BistabilityModel::spin;
  double total_spin = 20.0;
  bool with_gap = true;       // ssh-scan: also diagonalize for the gap
  bool emit_spectrum = true;  // gap-scaling: also emit the full spectrum table
  WindowRule window;
  std::size_t workers = 1;

  /// Defaults that mirror the published figure parameters.
  [[nodiscard]] static ExperimentConfig defaults(Scenario s);

  /// Throws ConfigError when a scenario's parameters are missing or out of range.
  void validate() const;

  /// Full configuration except the worker count.
  [[nodiscard]] nlohmann::json to_json() const;
};

struct ExperimentOutput {
  Scenario scenario = Scenario::skin_scan;
  std::vector<Table> tables;
  nlohmann::json summary = nlohmann::json::object();
  std::optional<FockLatticeView> fock_view;  // fock-lattice only, first gamma

  [[nodiscard]] const Table& table(const std::string& name) const;
};

[[nodiscard]] ExperimentOutput run_experiment(const ExperimentConfig& cfg);

[[nodiscard]] ExperimentOutput run_skin_scan(const ExperimentConfig& cfg);
[[nodiscard]] ExperimentOutput run_gap_scan(const ExperimentConfig& cfg);
[[nodiscard]] ExperimentOutput run_gap_scaling(const ExperimentConfig& cfg);
[[nodiscard]] ExperimentOutput run_fock_lattice(const ExperimentConfig& cfg);
[[nodiscard]] ExperimentOutput run_sensor(const ExperimentConfig& cfg);
[[nodiscard]] ExperimentOutput run_sensor_disorder(const ExperimentConfig& cfg);
[[nodiscard]] ExperimentOutput run_perturbed_spectrum(const ExperimentConfig& cfg);
[[nodiscard]] ExperimentOutput run_ssh_scan(const ExperimentConfig& cfg);
[[nodiscard]] ExperimentOutput run_bistability(const ExperimentConfig& cfg);

/// Metadata header: scenario, config, code version, conventions, summary.
[[nodiscard]] nlohmann::json experiment_metadata(const ExperimentConfig& cfg,
                                                 const ExperimentOutput& out);

/// lo, lo + step, ... up to hi (inclusive within 1e-9 step), rounded to 12 digits.
[[nodiscard]] std::vector<double> step_grid(double lo, double hi, double step);
[[nodiscard]] std::vector<std::size_t> odd_range(std::size_t lo, std::size_t hi, std::size_t step);

// Sensor building blocks, exposed for testing.

struct SensorPoint {
  std::size_t n = 0;
  double log_a = 0.0;  // ln A
  Complex zero_shift;  // eigenvalue nearest zero
  bool knee = false;
};

/// Clean-chain sensor sweep over n_list for one delta.
[[nodiscard]] std::vector<SensorPoint> sensor_sweep(const std::vector<std::size_t>& n_list,
                                                    double delta, double epsilon, double t,
                                                    double knee_ratio, std::size_t workers);

/// Fit of log10|ln A| against N over the points before the knee that sit above
/// the decay floor. Fields are NaN when fewer than three points qualify.
struct SensorTrace {
  double delta = 0.0;
  LinearFit fit;
  std::size_t fit_points = 0;
  std::size_t fit_n_min = 0;
  std::size_t fit_n_max = 0;
  std::optional<std::size_t> knee_n;  // first N past the knee
};

[[nodiscard]] SensorTrace analyze_sensor_trace(const std::vector<SensorPoint>& points,
                                               double delta, const WindowRule& rule);

struct EnsemblePoint {
  std::size_t n = 0;
  double mean_log_a = 0.0;      // with perturbation
  double std_log_a = 0.0;
  double mean_abs_log_a = 0.0;
  double noise_mean = 0.0;      // same disorder draws, epsilon = 0
  double noise_std = 0.0;
  double clean_log_a = 0.0;     // no disorder
  bool clean_knee = false;
};

/// Disorder ensemble per N. Realization r uses DisorderSpec{W, seed, r} for every N.
[[nodiscard]] std::vector<EnsemblePoint> sensor_ensemble(const std::vector<std::size_t>& n_list,
                                                         double delta, double strength,
                                                         double epsilon, std::size_t realizations,
                                                         std::uint64_t seed, double t,
                                                         const WindowRule& rule,
                                                         std::size_t workers);

struct SensorWindow {
  std::optional<std::size_t> n_lower;
  std::optional<std::size_t> n_upper;
  double slope = 0.0;  // d log10(mean |ln A|) / dN over the window
  std::string rule;

  [[nodiscard]] bool empty() const noexcept { return !n_lower || !n_upper; }
};

/// N_l: first N where mean |ln A| > noise_factor * noise std (any N if the noise is zero).
/// N_u: last N from N_l on before the clean-chain knee, or before the local slope of
/// log10(mean |ln A|) departs from the first slope after N_l by more than slope_tolerance.
[[nodiscard]] SensorWindow detect_window(const std::vector<EnsemblePoint>& points,
                                         const WindowRule& rule);

/// Crossing points of a rising order-parameter curve at 10/50/90 % of its
/// range (first value to maximum), found by linear interpolation.
struct TransitionMetrics {
  double gamma_10 = 0.0;
  double gamma_50 = 0.0;
  double gamma_90 = 0.0;
  double relative_width = 0.0;  // (gamma_90 - gamma_10) / gamma_50
};

[[nodiscard]] TransitionMetrics transition_metrics(const std::vector<double>& gamma,
                                                   const std::vector<double>& order);

}  // namespace hnl
