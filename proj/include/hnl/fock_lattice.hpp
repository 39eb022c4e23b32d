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

// Reads a vectorized Liouvillian as hopping on the 2D lattice of matrix units
// |n><m|. Node l = N*n + m (0-based); an edge (from, to) carries L_v(to, from).

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hnl/liouvillian.hpp"

namespace hnl {

enum class FockSiteClass {
  steady_corner,  // |N><N|
  near_edge,      // row or column N, touching the steady corner
  far_edge,       // row or column 1
  outer_corner,   // |1><1|, |1><N|, |N><1|
  bulk,
};

[[nodiscard]] std::string to_string(FockSiteClass c);

struct FockEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Complex amplitude;
};

struct FockLatticeView {
  std::size_t n_sites = 0;
  std::vector<double> onsite;  // eps_l = Re L_v(l, l)
  std::vector<double> onsite_imag;
  std::vector<FockSiteClass> classes;
  std::vector<FockEdge> edges;

  [[nodiscard]] std::size_t row(std::size_t l) const { return l / n_sites; }
  [[nodiscard]] std::size_t col(std::size_t l) const { return l % n_sites; }
};

/// Extracts every nonzero element of L_v (|entry| > threshold).
[[nodiscard]] FockLatticeView fock_lattice_view(const LiouvillianModel& m,
                                                double threshold = 1e-14);

/// Lattice parameters read off a view. Each value comes with the largest
/// deviation seen across its class, so uniformity is checked as well.
struct FockLatticeParameters {
  Complex t0;              // (n,m) -> (n+1,m), bulk
  double t0_spread = 0.0;  // max over nearest-neighbour edges of | |a| - |t0| |
  double t0_real_max = 0.0;
  Complex td;              // (n,m) -> (n+1,m+1)
  double td_spread = 0.0;
  std::size_t diagonal_edges = 0;
  std::size_t reverse_diagonal_edges = 0;  // any other diagonal orientation
  std::size_t other_edges = 0;             // range > 1 in n or m
  double eps_bulk = 0.0, eps_bulk_spread = 0.0;
  double eps_near_edge = 0.0, eps_near_edge_spread = 0.0;
  double eps_far_edge = 0.0, eps_far_edge_spread = 0.0;
  double eps_corner = 0.0;
  double onsite_max = 0.0;  // largest eps_l
};

/// Requires N >= 4 so that every class is populated.
[[nodiscard]] FockLatticeParameters extract_parameters(const FockLatticeView& v);

struct TableCheck {
  std::string name;
  double extracted = 0.0;
  double expected = 0.0;
  double error = 0.0;
  bool pass = false;
};

/// Compares against t0 = +-i(1-g), td = 2g, eps_b = -2g, corner 0,
/// near edge -g, far edge -3g. Errors are worst cases over each class.
[[nodiscard]] std::vector<TableCheck> verify_fock_parameters(const FockLatticeView& v, double gamma,
                                                       double tol = 1e-12);

[[nodiscard]] nlohmann::json to_json(const FockLatticeView& v);
[[nodiscard]] nlohmann::json to_json(const FockLatticeParameters& p);
[[nodiscard]] nlohmann::json to_json(const std::vector<TableCheck>& checks);

void write_dot(std::ostream& os, const FockLatticeView& v);

}  // namespace hnl
