/*
 * Copyright 2026 The bstw Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "bstw/band.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "bstw/errors.hpp"

namespace bstw {

namespace {

constexpr double kReachSlack = 1e-9;

std::vector<int> occupied(const Lattice& lattice, const WeightVector& outcome) {
  if (static_cast<int>(outcome.size()) != lattice.modes()) {
    throw InvalidArgument("outcome has " + std::to_string(outcome.size()) + " modes, lattice has " +
                          std::to_string(lattice.modes()));
  }
  std::vector<int> out;
  for (int j = 0; j < lattice.modes(); ++j) {
    if (outcome[j] < 0) throw InvalidArgument("negative occupation in outcome");
    if (outcome[j] > 0) out.push_back(j);
  }
  return out;
}

void check_kappa(double kappa) {
  if (!(kappa >= 0.5)) throw InvalidArgument("kappa must be >= 1/2");
}

bool within(const Lattice& lattice, int a, int b, double reach, DistanceMetric metric) {
  return lattice.distance(a, b, metric) <= reach + kReachSlack;
}

}  // namespace

BipartiteGraph geometric_bipartite_graph(const Lattice& lattice, const WeightVector& outcome, double kappa,
                                         DistanceMetric metric) {
  check_kappa(kappa);
  const double reach = kappa * lattice.cell_edge();
  BipartiteGraph g{occupied(lattice, outcome), lattice.source_modes(), {}};
  for (int j : g.rows) {
    for (int s : g.cols) {
      if (within(lattice, j, s, reach, metric)) g.edges.emplace_back(j, s);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

SymmetricGraph geometric_symmetric_graph(const Lattice& lattice, const WeightVector& outcome, double kappa,
                                         DistanceMetric metric) {
  check_kappa(kappa);
  const double reach = kappa * lattice.cell_edge();
  SymmetricGraph g{occupied(lattice, outcome), {}};
  const auto& src = lattice.source_modes();
  std::vector<std::vector<char>> hit(g.vertices.size(), std::vector<char>(src.size(), 0));
  for (std::size_t p = 0; p < g.vertices.size(); ++p) {
    for (std::size_t s = 0; s < src.size(); ++s) hit[p][s] = within(lattice, g.vertices[p], src[s], reach, metric);
  }
  for (std::size_t p = 0; p < g.vertices.size(); ++p) {
    for (std::size_t q = p; q < g.vertices.size(); ++q) {
      for (std::size_t s = 0; s < src.size(); ++s) {
        if (hit[p][s] && hit[q][s]) {
          g.edges.emplace_back(g.vertices[p], g.vertices[q]);
          break;
        }
      }
    }
  }
  return g;
}

TreeDecomposition band_decomposition(const Lattice& lattice, const WeightVector& outcome, double kappa,
                                     GraphKind kind, DistanceMetric metric) {
  // Sort key: (cell coordinates, kind rank, site coordinates), kind rank 0 = output, 1 = source.
  using Key = std::tuple<std::vector<int>, int, std::vector<int>>;
  auto key = [&](int mode, int rank) { return Key{lattice.cell_of(mode), rank, lattice.coords(mode)}; };
  std::vector<std::pair<Key, int>> items;
  if (kind == GraphKind::bipartite) {
    const BipartiteGraph g = geometric_bipartite_graph(lattice, outcome, kappa, metric);
    const int p = static_cast<int>(g.rows.size());
    for (int i = 0; i < p; ++i) items.emplace_back(key(g.rows[i], 0), i);
    for (std::size_t i = 0; i < g.cols.size(); ++i) items.emplace_back(key(g.cols[i], 1), p + static_cast<int>(i));
    std::sort(items.begin(), items.end());
    EliminationOrder order;
    for (const auto& it : items) order.order.push_back(it.second);
    return tree_decompose(g, order);
  }
  const SymmetricGraph g = geometric_symmetric_graph(lattice, outcome, kappa, metric);
  if (g.vertices.empty()) throw InvalidArgument("outcome has no occupied modes");
  for (std::size_t i = 0; i < g.vertices.size(); ++i) items.emplace_back(key(g.vertices[i], 0), static_cast<int>(i));
  std::sort(items.begin(), items.end());
  EliminationOrder order;
  for (const auto& it : items) order.order.push_back(it.second);
  return tree_decompose(g, order);
}

}  // namespace bstw
