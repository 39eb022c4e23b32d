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

// Command-line driver: one subcommand per scenario.
//
//   hnl skin-scan --n-list 21 41 --gamma-range 0.05 0.95 0.05 --out skin.csv
//   hnl sensor --delta 0.25 0.5 --n-range 5 121 4 --format json
//   hnl fock-lattice --n 7 --gamma 0.3 --format dot
//
// Configuration errors are reported as a JSON object on stderr with exit code 2.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hnl/experiments.hpp"

namespace {

using hnl::ConfigError;
using hnl::ExperimentConfig;
using hnl::Scenario;

struct Options {
  std::optional<std::size_t> n;
  std::vector<std::size_t> n_list;
  std::vector<std::size_t> n_range;
  std::optional<double> gamma;
  std::vector<double> gamma_grid;
  std::vector<double> gamma_range;
  std::vector<double> delta;
  std::vector<double> chi;
  std::optional<double> c;
  std::optional<std::string> jumps;
  std::optional<std::string> local_form;
  std::optional<std::string> bc;
  std::optional<double> epsilon;
  std::vector<double> disorder_w;
  std::optional<std::size_t> realizations;
  std::optional<std::uint64_t> seed;
  std::optional<double> t;
  std::optional<std::string> model;
  std::optional<double> spin;
  bool no_gap = false;
  bool no_spectrum = false;
  std::string out;
  std::string format = "csv";
  std::size_t workers = 1;
};

void add_options(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n, "single lattice size");
  sub->add_option("--n-list", o.n_list, "lattice sizes");
  sub->add_option("--n-range", o.n_range, "lo hi step (odd sizes for sensor scenarios)")->expected(3);
  sub->add_option("--gamma", o.gamma, "single dissipation rate");
  sub->add_option("--gamma-grid", o.gamma_grid, "explicit list of rates");
  sub->add_option("--gamma-range", o.gamma_range, "lo hi step")->expected(3);
  sub->add_option("--delta", o.delta, "non-reciprocity values");
  sub->add_option("--chi", o.chi, "SSH dimerization values");
  sub->add_option("--c", o.c, "jump-term weight in [0, 1]");
  sub->add_option("--jumps", o.jumps, "collective | local");
  sub->add_option("--local-form", o.local_form, "block | literal");
  sub->add_option("--bc", o.bc, "open | periodic");
  sub->add_option("--epsilon", o.epsilon, "corner perturbation strength");
  sub->add_option("--disorder-w", o.disorder_w, "disorder strengths");
  sub->add_option("--realizations", o.realizations, "disorder realizations");
  sub->add_option("--seed", o.seed, "base seed");
  sub->add_option("--t", o.t, "evolution time");
  sub->add_option("--model", o.model, "bistability model: spin | euclid");
  sub->add_option("--spin", o.spin, "total spin S");
  sub->add_flag("--no-gap", o.no_gap, "ssh-scan: skip the full diagonalization");
  sub->add_flag("--no-spectrum", o.no_spectrum, "gap-scaling: omit the spectrum table");
  sub->add_option("--out", o.out, "output file (stdout when omitted)");
  sub->add_option("--format", o.format, "csv | json | dot")
      ->check(CLI::IsMember({"csv", "json", "dot"}));
  sub->add_option("--workers", o.workers, "worker threads (0 = hardware concurrency)");
}

template <class T>
T choose(const std::string& flag, const std::string& value, const std::map<std::string, T>& table) {
  const auto it = table.find(value);
  if (it == table.end()) throw ConfigError(flag + ": unknown value '" + value + "'");
  return it->second;
}

ExperimentConfig build_config(Scenario s, const Options& o) {
  ExperimentConfig cfg = ExperimentConfig::defaults(s);
  if (o.n) cfg.n_list = {*o.n};
  if (!o.n_list.empty()) cfg.n_list = o.n_list;
  if (!o.n_range.empty()) {
    const bool odd = s == Scenario::sensor || s == Scenario::sensor_disorder;
    cfg.n_list.clear();
    if (odd) {
      cfg.n_list = hnl::odd_range(o.n_range[0], o.n_range[1], o.n_range[2]);
    } else {
      if (o.n_range[2] == 0) throw ConfigError("--n-range: step must be positive");
      for (std::size_t n = o.n_range[0]; n <= o.n_range[1]; n += o.n_range[2]) cfg.n_list.push_back(n);
    }
  }
  if (o.gamma) cfg.gamma_grid = {*o.gamma};
  if (!o.gamma_grid.empty()) cfg.gamma_grid = o.gamma_grid;
  if (!o.gamma_range.empty()) cfg.gamma_grid = hnl::step_grid(o.gamma_range[0], o.gamma_range[1], o.gamma_range[2]);
  if (!o.delta.empty()) cfg.delta_list = o.delta;
  if (!o.chi.empty()) cfg.chi_list = o.chi;
  if (o.c) cfg.c = *o.c;
  if (o.jumps) {
    cfg.jumps = choose<hnl::JumpKind>("--jumps", *o.jumps,
                                      {{"collective", hnl::JumpKind::collective}, {"local", hnl::JumpKind::local}});
  }
  if (o.local_form) {
    cfg.local_form = choose<hnl::LocalJumpForm>(
        "--local-form", *o.local_form, {{"block", hnl::LocalJumpForm::block}, {"literal", hnl::LocalJumpForm::literal}});
  }
  if (o.bc) {
    cfg.boundary =
        choose<hnl::Boundary>("--bc", *o.bc, {{"open", hnl::Boundary::open}, {"periodic", hnl::Boundary::periodic}});
  }
  if (o.epsilon) cfg.epsilon = *o.epsilon;
  if (!o.disorder_w.empty()) cfg.disorder_w = o.disorder_w;
  if (o.realizations) cfg.realizations = *o.realizations;
  if (o.seed) cfg.seed = *o.seed;
  if (o.t) cfg.t = *o.t;
  if (o.model) {
    cfg.bistability_model = choose<hnl::BistabilityModel>(
        "--model", *o.model, {{"spin", hnl::BistabilityModel::spin}, {"euclid", hnl::BistabilityModel::euclid}});
  }
  if (o.spin) cfg.total_spin = *o.spin;
  if (o.no_gap) cfg.with_gap = false;
  if (o.no_spectrum) cfg.emit_spectrum = false;
  cfg.workers = o.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.workers;
  if (o.format == "dot" && s != Scenario::fock_lattice) {
    throw ConfigError("--format dot is only available for fock-lattice");
  }
  cfg.validate();
  return cfg;
}

int report_error(const std::string& kind, const std::string& message, int code) {
  const nlohmann::json err{{"error", kind}, {"message", message}};
  std::cerr << err.dump() << '\n';
  return code;
}

void emit(std::ostream& os, const std::string& format, const ExperimentConfig& cfg,
          const hnl::ExperimentOutput& out) {
  const nlohmann::json meta = hnl::experiment_metadata(cfg, out);
  const std::string stamp = hnl::utc_timestamp();
  if (format == "dot") {
    hnl::write_dot(os, *out.fock_view);
  } else if (format == "json") {
    nlohmann::json doc = hnl::json_document(meta, out.tables, stamp);
    if (out.fock_view) doc["fock_lattice"] = hnl::to_json(*out.fock_view);
    os << doc.dump(2) << '\n';
  } else {
    hnl::write_csv_document(os, meta, out.tables, stamp);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lindblad simulations of non-Hermitian skin-effect lattices"};
  app.require_subcommand(1);
  std::map<CLI::App*, Scenario> subs;
  Options opts;
  for (Scenario s : hnl::all_scenarios()) {
    CLI::App* sub = app.add_subcommand(hnl::to_string(s), "run the " + hnl::to_string(s) + " scenario");
    add_options(sub, opts);
    subs[sub] = s;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("config", e.what(), 2);
  }

  Scenario scenario{};
  for (const auto& [sub, s] : subs) {
    if (sub->parsed()) scenario = s;
  }

  ExperimentConfig cfg;
  try {
    cfg = build_config(scenario, opts);
  } catch (const ConfigError& e) {
    return report_error("config", e.what(), 2);
  } catch (const std::exception& e) {
    return report_error("config", e.what(), 2);
  }

  try {
    const hnl::ExperimentOutput out = hnl::run_experiment(cfg);
    if (opts.out.empty()) {
      emit(std::cout, opts.format, cfg, out);
    } else {
      std::ofstream file(opts.out);
      if (!file) return report_error("io", "cannot open " + opts.out, 3);
      emit(file, opts.format, cfg, out);
    }
  } catch (const ConfigError& e) {
    return report_error("config", e.what(), 2);
  } catch (const std::exception& e) {
    return report_error("runtime", e.what(), 1);
  }
  return 0;
}
