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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hnl/experiments.hpp"
#include "hnl/observables.hpp"
#include "hnl/operators.hpp"
#include "hnl/spectral.hpp"

using namespace hnl;

namespace {

std::string data_section(const ExperimentConfig& cfg) {
  const ExperimentOutput out = run_experiment(cfg);
  std::ostringstream os;
  write_csv_document(os, experiment_metadata(cfg, out), out.tables, "fixed");
  return os.str();
}

EnsemblePoint point(std::size_t n, double mean_abs, double noise, bool knee = false) {
  EnsemblePoint p;
  p.n = n;
  p.mean_abs_log_a = mean_abs;
  p.noise_std = noise;
  p.clean_knee = knee;
  return p;
}

/// Steady state of the spin model by brute force: kernel of the Liouvillian built
/// from explicit basis-matrix images.
DensityMatrix spin_steady_oracle(double s, double gamma) {
  const SpinBistabilityModel m = build_spin_bistability({s, gamma});
  const auto n = m.hamiltonian.rows();
  Matrix lv(n * n, n * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      Matrix e = Matrix::Zero(n, n);
      e(a, b) = 1.0;
      const Matrix& l = m.jump;
      const Matrix out = -kI * (m.hamiltonian * e - e * m.hamiltonian) +
                         m.rate * (2.0 * l * e * l.adjoint() - l.adjoint() * l * e - e * l.adjoint() * l);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) lv(i * n + j, a * n + b) = out(i, j);
      }
    }
  }
  const Eigen::FullPivLU<Matrix> lu(lv);
  const Matrix ker = lu.kernel();
  REQUIRE(ker.cols() == 1);
  Matrix rho(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) rho(i, j) = ker(i * n + j, 0);
  }
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("scenario names round-trip") {
  for (Scenario s : all_scenarios()) CHECK(parse_scenario(to_string(s)) == s);
  CHECK(all_scenarios().size() == 9);
  CHECK_THROWS_AS((void)parse_scenario("nope"), ConfigError);
}

TEST_CASE("grids") {
  const auto g = step_grid(0.05, 0.95, 0.05);
  CHECK(g.size() == 19);
  CHECK(g.front() == 0.05);
  CHECK(g.back() == 0.95);
  CHECK(g[9] == 0.5);
  CHECK(odd_range(4, 13, 4) == std::vector<std::size_t>{5, 9, 13});
  CHECK_THROWS_AS((void)odd_range(5, 13, 3), ConfigError);
  CHECK_THROWS_AS((void)step_grid(1.0, 0.0, 0.1), ConfigError);
}

TEST_CASE("defaults validate") {
  for (Scenario s : all_scenarios()) CHECK_NOTHROW(ExperimentConfig::defaults(s).validate());
}

TEST_CASE("invalid configurations are rejected before running") {
  auto cfg = ExperimentConfig::defaults(Scenario::skin_scan);
  cfg.gamma_grid = {0.5, 1.2};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_THROWS_AS((void)run_experiment(cfg), ConfigError);

  cfg = ExperimentConfig::defaults(Scenario::skin_scan);
  cfg.c = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = ExperimentConfig::defaults(Scenario::sensor);
  cfg.n_list = {5, 8};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = ExperimentConfig::defaults(Scenario::sensor);
  cfg.delta_list = {1.0};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = ExperimentConfig::defaults(Scenario::sensor_disorder);
  cfg.realizations = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = ExperimentConfig::defaults(Scenario::gap_scaling);
  cfg.n_list = {11, 21};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = ExperimentConfig::defaults(Scenario::ssh_scan);
  cfg.chi_list = {1.0};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = ExperimentConfig::defaults(Scenario::fock_lattice);
  cfg.jumps = JumpKind::local;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = ExperimentConfig::defaults(Scenario::perturbed_spectrum);
  cfg.n_list = {65};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = ExperimentConfig::defaults(Scenario::bistability);
  cfg.total_spin = 0.3;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = ExperimentConfig::defaults(Scenario::skin_scan);
  cfg.workers = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("skin scan rows") {
  auto cfg = ExperimentConfig::defaults(Scenario::skin_scan);
  cfg.n_list = {9};
  cfg.gamma_grid = {0.1, 0.5, 0.9};
  const ExperimentOutput out = run_experiment(cfg);
  const Table& t = out.table("skin_scan");
  REQUIRE(t.rows().size() == 3);
  const auto phys = t.column_index("physical");
  const auto xi = t.column_index("xi_lme");
  const auto xi_hn = t.column_index("xi_hn");
  for (const auto& row : t.rows()) {
    CHECK(std::get<bool>(row[phys]));
    CHECK(std::get<std::int64_t>(row[t.column_index("multiplicity")]) == 1);
  }
  CHECK(std::get<double>(t.rows()[2][xi]) > std::get<double>(t.rows()[0][xi]));
  CHECK(std::get<double>(t.rows()[2][xi_hn]) > 0.9);

  // Cross-check one row against a direct steady-state solve.
  const DensityMatrix rho =
      steady_state(build_hn_lme({9, Boundary::open}, 0.5, JumpKind::collective).matrix()).rho;
  CHECK(std::get<double>(t.rows()[1][xi]) == doctest::Approx(scaled_position(rho)).epsilon(1e-12));
}

TEST_CASE("output is deterministic and worker-count invariant") {
  auto cfg = ExperimentConfig::defaults(Scenario::sensor_disorder);
  cfg.n_list = {5, 9, 13};
  cfg.realizations = 6;
  cfg.disorder_w = {5e-4, 0.0};
  const std::string one = data_section(cfg);
  CHECK(one == data_section(cfg));
  cfg.workers = 3;
  CHECK(one == data_section(cfg));

  auto skin = ExperimentConfig::defaults(Scenario::skin_scan);
  skin.n_list = {5, 7};
  skin.gamma_grid = {0.2, 0.7};
  const std::string a = data_section(skin);
  skin.workers = 4;
  CHECK(a == data_section(skin));
}

TEST_CASE("metadata carries config, version and conventions") {
  auto cfg = ExperimentConfig::defaults(Scenario::fock_lattice);
  const ExperimentOutput out = run_experiment(cfg);
  const nlohmann::json meta = experiment_metadata(cfg, out);
  CHECK(meta["scenario"] == "fock-lattice");
  CHECK(meta["config"]["seed"] == cfg.seed);
  CHECK_FALSE(meta["config"].contains("workers"));
  CHECK(meta.contains("code_version"));
  CHECK(meta["conventions"].contains("tol_zero"));
  REQUIRE(out.fock_view.has_value());
  for (const auto& row : out.table("fock_parameters").rows()) CHECK(std::get<bool>(row.back()));
}

TEST_CASE("fock-lattice scenario at c = 0 loses diagonal edges") {
  auto cfg = ExperimentConfig::defaults(Scenario::fock_lattice);
  cfg.c = 0.0;
  const ExperimentOutput out = run_experiment(cfg);
  CHECK(out.summary["parameters"][0]["diagonal_edges"] == 0);
}

TEST_CASE("sensor with no perturbation") {
  auto cfg = ExperimentConfig::defaults(Scenario::sensor);
  cfg.epsilon = 0.0;
  cfg.n_list = {5, 9, 21};
  cfg.delta_list = {0.5};
  const ExperimentOutput out = run_experiment(cfg);
  const Table& t = out.table("sensor");
  for (const auto& row : t.rows()) {
    CHECK(std::abs(std::get<double>(row[t.column_index("log_A")])) < 1e-13);
    CHECK_FALSE(std::get<bool>(row[t.column_index("knee_flag")]));
  }
}

TEST_CASE("window detection on constructed traces") {
  const WindowRule rule;
  std::vector<EnsemblePoint> pts;
  // Signal 10^(0.1 N - 12), noise 1e-6: crosses 2 sigma between N=61 and N=65.
  for (std::size_t n = 5; n <= 101; n += 4) {
    pts.push_back(point(n, std::pow(10.0, 0.1 * n - 12.0), 1e-6, n >= 93));
  }
  SensorWindow w = detect_window(pts, rule);
  REQUIRE_FALSE(w.empty());
  CHECK(*w.n_lower == 65);
  CHECK(*w.n_upper == 89);
  CHECK(w.slope == doctest::Approx(0.1));
  CHECK_FALSE(w.rule.empty());

  // A bend in the slope ends the window early.
  for (auto& p : pts) {
    if (p.n > 77) p.mean_abs_log_a = std::pow(10.0, 0.1 * 77 - 12.0 + 0.3 * (p.n - 77.0));
  }
  w = detect_window(pts, rule);
  CHECK(*w.n_upper == 77);

  // No noise: the window starts at the first N.
  for (auto& p : pts) p.noise_std = 0.0;
  w = detect_window(pts, rule);
  CHECK(*w.n_lower == 5);

  // Noise above the signal everywhere: empty.
  for (auto& p : pts) p.noise_std = 1e9;
  CHECK(detect_window(pts, rule).empty());
}

TEST_CASE("transition metrics") {
  std::vector<double> g, x;
  for (int k = 0; k <= 100; ++k) {
    g.push_back(0.01 * k);
    x.push_back(std::tanh((0.01 * k - 0.5) / 0.05));
  }
  const TransitionMetrics m = transition_metrics(g, x);
  CHECK(m.gamma_50 == doctest::Approx(0.5).epsilon(1e-3));
  const double base = x.front(), top = x.back();
  const double y10 = base + 0.1 * (top - base);
  CHECK(m.gamma_10 == doctest::Approx(0.5 + 0.05 * std::atanh(y10)).epsilon(1e-3));
  CHECK(m.relative_width == doctest::Approx((m.gamma_90 - m.gamma_10) / m.gamma_50));
  CHECK(std::isnan(transition_metrics({0.0, 1.0}, {1.0, 0.5}).gamma_50));
  CHECK_THROWS((void)transition_metrics({0.0}, {1.0}));
}

TEST_CASE("spin bistability against a brute-force kernel") {
  auto cfg = ExperimentConfig::defaults(Scenario::bistability);
  cfg.total_spin = 0.5;
  cfg.gamma_grid = {1e-3, 0.3, 1.0};
  const ExperimentOutput out = run_experiment(cfg);
  const Table& t = out.table("bistability");
  const SpinOperators ops = spin_operators(0.5);
  for (std::size_t k = 0; k < cfg.gamma_grid.size(); ++k) {
    const DensityMatrix oracle = spin_steady_oracle(0.5, cfg.gamma_grid[k]);
    const double expected = (oracle * ops.sz).trace().real() / 0.5;
    CHECK(std::get<double>(t.rows()[k][2]) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(std::get<bool>(t.rows()[k][3]));
  }
  // Weak damping: the drive mixes the two levels completely.
  CHECK(std::abs(std::get<double>(t.rows()[0][2])) < 1e-4);
  CHECK((spin_steady_oracle(0.5, 1e-3) - identity(2) / 2.0).norm() < 1e-2);
}

TEST_CASE("ssh scan at chi = 0 reproduces the HN scan") {
  auto ssh = ExperimentConfig::defaults(Scenario::ssh_scan);
  ssh.n_list = {7};
  ssh.chi_list = {0.0};
  ssh.gamma_grid = {0.2, 0.6};
  auto hn = ExperimentConfig::defaults(Scenario::skin_scan);
  hn.n_list = {7};
  hn.gamma_grid = {0.2, 0.6};
  const ExperimentOutput ssh_out = run_experiment(ssh);
  const Table& a = ssh_out.table("ssh_scan");
  const ExperimentOutput hn_out = run_experiment(hn);
  const Table& b = hn_out.table("skin_scan");
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(std::get<double>(a.rows()[k][a.column_index("xi")]) ==
          doctest::Approx(std::get<double>(b.rows()[k][b.column_index("xi_lme")])).epsilon(1e-10));
  }
}
