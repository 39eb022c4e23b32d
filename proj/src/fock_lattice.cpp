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

#include "hnl/fock_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "hnl/table.hpp"

namespace hnl {

std::string to_string(FockSiteClass c) {
  switch (c) {
    case FockSiteClass::steady_corner: return "steady_corner";
    case FockSiteClass::near_edge: return "near_edge";
    case FockSiteClass::far_edge: return "far_edge";
    case FockSiteClass::outer_corner: return "outer_corner";
    case FockSiteClass::bulk: return "bulk";
  }
  return "unknown";
}

namespace {

FockSiteClass classify(std::size_t n, std::size_t m, std::size_t size) {
  const std::size_t last = size - 1;
  const bool n_first = n == 0, m_first = m == 0, n_last = n == last, m_last = m == last;
  if (n_last && m_last) return FockSiteClass::steady_corner;
  if ((n_first || n_last) && (m_first || m_last)) return FockSiteClass::outer_corner;
  if (n_last || m_last) return FockSiteClass::near_edge;
  if (n_first || m_first) return FockSiteClass::far_edge;
  return FockSiteClass::bulk;
}

}  // namespace

FockLatticeView fock_lattice_view(const LiouvillianModel& m, double threshold) {
  const SuperOperator& so = m.matrix();
  const Matrix& lv = so.matrix();
  FockLatticeView v;
  v.n_sites = so.hilbert_dim();
  const std::size_t d = so.dim();
  v.onsite.resize(d);
  v.onsite_imag.resize(d);
  v.classes.resize(d);
  for (std::size_t l = 0; l < d; ++l) {
    const auto li = static_cast<Eigen::Index>(l);
    v.onsite[l] = lv(li, li).real();
    v.onsite_imag[l] = lv(li, li).imag();
    v.classes[l] = classify(l / v.n_sites, l % v.n_sites, v.n_sites);
  }
  for (Eigen::Index from = 0; from < lv.cols(); ++from) {
    for (Eigen::Index to = 0; to < lv.rows(); ++to) {
      if (to == from) continue;
      const Complex a = lv(to, from);
      if (std::abs(a) > threshold) {
        v.edges.push_back({static_cast<std::size_t>(from), static_cast<std::size_t>(to), a});
      }
    }
  }
  return v;
}

FockLatticeParameters extract_parameters(const FockLatticeView& v) {
  const std::size_t n = v.n_sites;
  if (n < 4) throw DomainError("extract_parameters needs N >= 4");
  FockLatticeParameters p;
  auto site = [n](std::size_t a, std::size_t b) { return n * a + b; };

  // Representatives: bulk site (1,1), near edge (N-1, 1), far edge (0, 1).
  p.eps_bulk = v.onsite[site(1, 1)];
  p.eps_near_edge = v.onsite[site(n - 1, 1)];
  p.eps_far_edge = v.onsite[site(0, 1)];
  p.eps_corner = v.onsite[site(n - 1, n - 1)];
  p.onsite_max = *std::max_element(v.onsite.begin(), v.onsite.end());
  for (std::size_t l = 0; l < v.onsite.size(); ++l) {
    const double e = v.onsite[l];
    switch (v.classes[l]) {
      case FockSiteClass::bulk:
        p.eps_bulk_spread = std::max(p.eps_bulk_spread, std::abs(e - p.eps_bulk));
        break;
      case FockSiteClass::near_edge:
        p.eps_near_edge_spread = std::max(p.eps_near_edge_spread, std::abs(e - p.eps_near_edge));
        break;
      case FockSiteClass::far_edge:
        p.eps_far_edge_spread = std::max(p.eps_far_edge_spread, std::abs(e - p.eps_far_edge));
        break;
      default:
        break;
    }
  }

  bool have_t0 = false, have_td = false;
  std::vector<Complex> nn, diag;
  for (const FockEdge& e : v.edges) {
    const auto dn = static_cast<long>(v.row(e.to)) - static_cast<long>(v.row(e.from));
    const auto dm = static_cast<long>(v.col(e.to)) - static_cast<long>(v.col(e.from));
    if (std::abs(dn) + std::abs(dm) == 1) {
      nn.push_back(e.amplitude);
      if (dn == 1 && v.classes[e.from] == FockSiteClass::bulk && !have_t0) {
        p.t0 = e.amplitude;
        have_t0 = true;
      }
    } else if (std::abs(dn) == 1 && std::abs(dm) == 1) {
      if (dn == 1 && dm == 1) {
        ++p.diagonal_edges;
        diag.push_back(e.amplitude);
        if (!have_td) {
          p.td = e.amplitude;
          have_td = true;
        }
      } else {
        ++p.reverse_diagonal_edges;
      }
    } else {
      ++p.other_edges;
    }
  }
  for (const Complex& a : nn) {
    p.t0_spread = std::max(p.t0_spread, std::abs(std::abs(a) - std::abs(p.t0)));
    p.t0_real_max = std::max(p.t0_real_max, std::abs(a.real()));
  }
  for (const Complex& a : diag) p.td_spread = std::max(p.td_spread, std::abs(a - p.td));
  return p;
}

std::vector<TableCheck> verify_fock_parameters(const FockLatticeView& v, double gamma, double tol) {
  const FockLatticeParameters p = extract_parameters(v);
  std::vector<TableCheck> out;
  auto add = [&](std::string name, double extracted, double expected, double error) {
    out.push_back({std::move(name), extracted, expected, error, error <= tol});
  };

  // Every nearest-neighbour amplitude must be +i(1-g) or -i(1-g).
  double t0_err = 0.0;
  for (const FockEdge& e : v.edges) {
    const auto dn = static_cast<long>(v.row(e.to)) - static_cast<long>(v.row(e.from));
    const auto dm = static_cast<long>(v.col(e.to)) - static_cast<long>(v.col(e.from));
    if (std::abs(dn) + std::abs(dm) != 1) continue;
    const Complex target = kI * (1.0 - gamma);
    t0_err = std::max(t0_err, std::min(std::abs(e.amplitude - target), std::abs(e.amplitude + target)));
  }
  add("t0_abs_imag", std::abs(p.t0.imag()), 1.0 - gamma, t0_err);

  double td_err = p.diagonal_edges == 0 ? std::abs(2.0 * gamma) : std::abs(p.td - Complex{2.0 * gamma, 0.0});
  td_err = std::max(td_err, p.td_spread);
  if (p.reverse_diagonal_edges > 0 || p.other_edges > 0) td_err = std::max(td_err, 1.0);
  add("td", p.td.real(), 2.0 * gamma, td_err);

  add("eps_bulk", p.eps_bulk, -2.0 * gamma,
      std::abs(p.eps_bulk + 2.0 * gamma) + p.eps_bulk_spread);
  add("eps_corner", p.eps_corner, 0.0, std::abs(p.eps_corner));
  add("eps_near_edge", p.eps_near_edge, -gamma,
      std::abs(p.eps_near_edge + gamma) + p.eps_near_edge_spread);
  add("eps_far_edge", p.eps_far_edge, -3.0 * gamma,
      std::abs(p.eps_far_edge + 3.0 * gamma) + p.eps_far_edge_spread);
  return out;
}

nlohmann::json to_json(const FockLatticeView& v) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t l = 0; l < v.onsite.size(); ++l) {
    nodes.push_back({{"id", l},
                     {"n", v.row(l) + 1},
                     {"m", v.col(l) + 1},
                     {"onsite", v.onsite[l]},
                     {"class", to_string(v.classes[l])}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const FockEdge& e : v.edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"re", e.amplitude.real()}, {"im", e.amplitude.imag()}});
  }
  return {{"n_sites", v.n_sites}, {"nodes", nodes}, {"edges", edges}};
}

nlohmann::json to_json(const FockLatticeParameters& p) {
  return {{"t0", {{"re", p.t0.real()}, {"im", p.t0.imag()}}},
          {"t0_spread", p.t0_spread},
          {"td", {{"re", p.td.real()}, {"im", p.td.imag()}}},
          {"td_spread", p.td_spread},
          {"diagonal_edges", p.diagonal_edges},
          {"reverse_diagonal_edges", p.reverse_diagonal_edges},
          {"other_edges", p.other_edges},
          {"eps_bulk", p.eps_bulk},
          {"eps_near_edge", p.eps_near_edge},
          {"eps_far_edge", p.eps_far_edge},
          {"eps_corner", p.eps_corner},
          {"onsite_max", p.onsite_max}};
}

nlohmann::json to_json(const std::vector<TableCheck>& checks) {
  nlohmann::json out = nlohmann::json::array();
  for (const TableCheck& c : checks) {
    out.push_back({{"name", c.name},
                   {"extracted", c.extracted},
                   {"expected", c.expected},
                   {"error", c.error},
                   {"pass", c.pass}});
  }
  return out;
}

void write_dot(std::ostream& os, const FockLatticeView& v) {
  os << "digraph fock_lattice {\n";
  for (std::size_t l = 0; l < v.onsite.size(); ++l) {
    os << "  " << l << " [n=" << v.row(l) + 1 << ", m=" << v.col(l) + 1
       << ", onsite=\"" << format_double(v.onsite[l]) << "\", class=\"" << to_string(v.classes[l])
       << "\"];\n";
  }
  for (const FockEdge& e : v.edges) {
    os << "  " << e.from << " -> " << e.to << " [re=\"" << format_double(e.amplitude.real())
       << "\", im=\"" << format_double(e.amplitude.imag()) << "\"];\n";
  }
  os << "}\n";
}

}  // namespace hnl
