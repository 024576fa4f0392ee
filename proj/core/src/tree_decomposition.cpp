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

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "bstw/errors.hpp"
#include "bstw/graph.hpp"

namespace bstw {

namespace {

// Simple undirected graph on vertices 0..n-1; loops are irrelevant for widths.
struct UGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

struct RawTree {
  std::vector<std::vector<int>> bags;
  std::vector<int> parent;
  int root = 0;
};

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

RawTree eliminate(const UGraph& g, const Strategy& strategy) {
  const int n = g.n;
  std::vector<char> adj(static_cast<std::size_t>(n) * n, 0);
  auto at = [&](int i, int j) -> char& { return adj[static_cast<std::size_t>(i) * n + j]; };
  for (auto [i, j] : g.edges) {
    if (i != j) at(i, j) = at(j, i) = 1;
  }
  std::vector<char> alive(n, 1);
  std::vector<int> position(n, -1);
  std::vector<std::vector<int>> neighbours(n);

  const auto* explicit_order = std::get_if<EliminationOrder>(&strategy);
  if (explicit_order) {
    std::vector<int> check = explicit_order->order;
    std::sort(check.begin(), check.end());
    std::vector<int> want(n);
    std::iota(want.begin(), want.end(), 0);
    if (check != want) throw InvalidArgument("elimination order is not a permutation of the vertices");
  }
  const bool min_fill = std::holds_alternative<MinFill>(strategy);

  auto alive_neighbours = [&](int v) {
    std::vector<int> out;
    for (int u = 0; u < n; ++u) {
      if (u != v && alive[u] && at(v, u)) out.push_back(u);
    }
    return out;
  };
  auto fill_of = [&](const std::vector<int>& nb) {
    long long missing = 0;
    for (std::size_t p = 0; p < nb.size(); ++p) {
      for (std::size_t q = p + 1; q < nb.size(); ++q) {
        if (!at(nb[p], nb[q])) ++missing;
      }
    }
    return missing;
  };

  for (int step = 0; step < n; ++step) {
    int v = -1;
    if (explicit_order) {
      v = explicit_order->order[step];
    } else {
      long long best_fill = std::numeric_limits<long long>::max();
      std::size_t best_degree = std::numeric_limits<std::size_t>::max();
      for (int u = 0; u < n; ++u) {
        if (!alive[u]) continue;
        const auto nb = alive_neighbours(u);
        const long long fill = min_fill ? fill_of(nb) : 0;
        if (fill < best_fill || (fill == best_fill && nb.size() < best_degree)) {
          best_fill = fill;
          best_degree = nb.size();
          v = u;
        }
      }
    }
    auto nb = alive_neighbours(v);
    for (std::size_t p = 0; p < nb.size(); ++p) {
      for (std::size_t q = p + 1; q < nb.size(); ++q) at(nb[p], nb[q]) = at(nb[q], nb[p]) = 1;
    }
    alive[v] = 0;
    position[v] = step;
    neighbours[v] = std::move(nb);
  }

  RawTree t;
  t.bags.resize(n);
  t.parent.assign(n, -1);
  int last = -1;
  std::vector<int> roots;
  for (int v = 0; v < n; ++v) {
    auto bag = neighbours[v];
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    t.bags[v] = std::move(bag);
    int parent = -1;
    for (int u : neighbours[v]) {
      if (parent < 0 || position[u] < position[parent]) parent = u;
    }
    t.parent[v] = parent;
    if (parent < 0) roots.push_back(v);
    if (last < 0 || position[v] > position[last]) last = v;
  }
  for (int r : roots) {
    if (r != last) t.parent[r] = last;
  }
  t.root = last;
  return t;
}

RawTree band(const UGraph& g, const BandOrder& b) {
  const int n = g.n;
  std::vector<int> pos(n, -1);
  if (static_cast<int>(b.order.size()) != n) throw InvalidArgument("band order must list every vertex once");
  for (int i = 0; i < n; ++i) {
    const int v = b.order[i];
    if (v < 0 || v >= n || pos[v] >= 0) throw InvalidArgument("band order must list every vertex once");
    pos[v] = i;
  }
  int h = std::max(0, b.halfwidth.value_or(0));
  for (auto [i, j] : g.edges) h = std::max(h, std::abs(pos[i] - pos[j]));
  RawTree t;
  const int windows = std::max(1, n - h);
  for (int w = 0; w < windows; ++w) {
    std::vector<int> bag(b.order.begin() + w, b.order.begin() + std::min(n, w + h + 1));
    std::sort(bag.begin(), bag.end());
    t.bags.push_back(std::move(bag));
    t.parent.push_back(w - 1);
  }
  t.root = 0;
  return t;
}

// Merges nodes whose bag is contained in an adjacent bag.
void prune(RawTree& t) {
  const int n = static_cast<int>(t.bags.size());
  std::vector<char> dead(n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int c = 0; c < n; ++c) {
      if (dead[c] || t.parent[c] < 0) continue;
      const int p = t.parent[c];
      const bool c_in_p = is_subset(t.bags[c], t.bags[p]);
      const bool p_in_c = !c_in_p && is_subset(t.bags[p], t.bags[c]);
      if (!c_in_p && !p_in_c) continue;
      if (p_in_c) t.bags[p] = t.bags[c];
      for (int k = 0; k < n; ++k) {
        if (!dead[k] && t.parent[k] == c) t.parent[k] = p;
      }
      dead[c] = 1;
      changed = true;
    }
  }
  RawTree out;
  std::vector<int> remap(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!dead[v]) {
      remap[v] = static_cast<int>(out.bags.size());
      out.bags.push_back(t.bags[v]);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!dead[v]) out.parent.push_back(t.parent[v] < 0 ? -1 : remap[t.parent[v]]);
  }
  out.root = remap[t.root];
  t = std::move(out);
}

// Breadth-first renumbering with the root at index 0.
TreeDecomposition finish(const RawTree& t, GraphKind kind, std::size_t n_rows,
                         const std::vector<int>& rows, const std::vector<int>& cols) {
  const int n = static_cast<int>(t.bags.size());
  std::vector<std::vector<int>> kids(n);
  for (int v = 0; v < n; ++v) {
    if (t.parent[v] >= 0) kids[t.parent[v]].push_back(v);
  }
  std::vector<int> order{t.root};
  std::vector<int> new_id(n, -1);
  new_id[t.root] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int k : kids[order[head]]) {
      new_id[k] = static_cast<int>(order.size());
      order.push_back(k);
    }
  }
  TreeDecomposition td;
  td.kind = kind;
  td.nodes.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int old = order[i];
    TreeNode& node = td.nodes[i];
    node.id = static_cast<int>(i);
    node.parent = t.parent[old] < 0 ? -1 : new_id[t.parent[old]];
    for (int k : kids[old]) node.children.push_back(new_id[k]);
    std::sort(node.children.begin(), node.children.end());
    for (int v : t.bags[old]) {
      if (kind == GraphKind::bipartite && static_cast<std::size_t>(v) < n_rows) {
        node.bag_rows.push_back(rows[v]);
      } else {
        node.bag_cols.push_back(cols[v - (kind == GraphKind::bipartite ? n_rows : 0)]);
      }
    }
    std::sort(node.bag_rows.begin(), node.bag_rows.end());
    std::sort(node.bag_cols.begin(), node.bag_cols.end());
  }
  return td;
}

TreeDecomposition decompose(const UGraph& g, const Strategy& strategy, GraphKind kind, std::size_t n_rows,
                            const std::vector<int>& rows, const std::vector<int>& cols) {
  if (g.n == 0) throw InvalidArgument("cannot decompose an empty graph");
  RawTree t = std::holds_alternative<BandOrder>(strategy) ? band(g, std::get<BandOrder>(strategy))
                                                          : eliminate(g, strategy);
  prune(t);
  return finish(t, kind, n_rows, rows, cols);
}

// Shared validation over unified vertex keys; `key` maps (is_row, label) to an index or -1.
template <class Key>
std::vector<Violation> validate(const TreeDecomposition& td, int n_vertices,
                                const std::vector<std::pair<int, int>>& unified_edges, Key key,
                                const std::vector<std::string>& names) {
  std::vector<Violation> out;
  const int n = static_cast<int>(td.nodes.size());
  auto add = [&](ViolationKind k, std::string msg) { out.push_back({k, std::move(msg)}); };
  if (n == 0) {
    add(ViolationKind::tree_structure, "decomposition has no nodes");
    return out;
  }
  bool structure_ok = true;
  for (int i = 0; i < n; ++i) {
    const TreeNode& node = td.nodes[i];
    if (node.id != i) {
      add(ViolationKind::tree_structure, "node " + std::to_string(i) + " has id " + std::to_string(node.id));
      structure_ok = false;
    }
    if ((i == 0) != (node.parent < 0)) {
      add(ViolationKind::tree_structure, "node " + std::to_string(i) + " has bad parent " +
                                             std::to_string(node.parent));
      structure_ok = false;
    } else if (node.parent >= n) {
      add(ViolationKind::tree_structure, "node " + std::to_string(i) + " parent out of range");
      structure_ok = false;
    }
    for (int c : node.children) {
      if (c < 0 || c >= n || td.nodes[c].parent != i) {
        add(ViolationKind::tree_structure, "node " + std::to_string(i) + " lists inconsistent child " +
                                               std::to_string(c));
        structure_ok = false;
      }
    }
  }
  if (structure_ok) {
    std::vector<int> seen(n, 0);
    std::vector<int> stack{0};
    int visited = 0;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (seen[v]++) continue;
      ++visited;
      for (int c : td.nodes[v].children) stack.push_back(c);
    }
    for (int i = 0; i < n; ++i) {
      if (seen[i] != 1) {
        add(ViolationKind::tree_structure, "node " + std::to_string(i) + " not reached exactly once from root");
        structure_ok = false;
      }
    }
    for (int i = 1; i < n && structure_ok; ++i) {
      const auto& sib = td.nodes[td.nodes[i].parent].children;
      if (std::find(sib.begin(), sib.end(), i) == sib.end()) {
        add(ViolationKind::tree_structure, "node " + std::to_string(i) + " missing from its parent's children");
        structure_ok = false;
      }
    }
  }

  std::vector<std::vector<int>> holders(n_vertices);
  for (int i = 0; i < n; ++i) {
    const TreeNode& node = td.nodes[i];
    std::vector<int> keys;
    auto take = [&](bool is_row, int label) {
      const int k = key(is_row, label);
      if (k < 0) {
        add(ViolationKind::unknown_vertex, "node " + std::to_string(i) + " holds unknown " +
                                               (is_row ? "row " : "vertex ") + std::to_string(label));
        return;
      }
      keys.push_back(k);
    };
    for (int a : node.bag_rows) take(true, a);
    for (int x : node.bag_cols) take(false, x);
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
      add(ViolationKind::tree_structure, "node " + std::to_string(i) + " repeats a vertex");
    }
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (int k : keys) holders[k].push_back(i);
  }
  for (int v = 0; v < n_vertices; ++v) {
    if (holders[v].empty()) add(ViolationKind::vertex_coverage, names[v] + " is in no bag");
  }
  for (auto [u, v] : unified_edges) {
    const auto& hu = holders[u];
    const auto& hv = holders[v];
    bool found = false;
    for (int a : hu) {
      if (std::binary_search(hv.begin(), hv.end(), a)) {
        found = true;
        break;
      }
    }
    if (!found) {
      add(ViolationKind::edge_coverage, "edge {" + names[u] + ", " + names[v] + "} is in no bag");
    }
  }
  if (structure_ok) {
    for (int v = 0; v < n_vertices; ++v) {
      int tops = 0;
      for (int node : holders[v]) {
        const int p = td.nodes[node].parent;
        if (p < 0 || !std::binary_search(holders[v].begin(), holders[v].end(), p)) ++tops;
      }
      if (tops > 1) {
        add(ViolationKind::connectivity, names[v] + " appears in " + std::to_string(tops) +
                                             " disconnected parts of the tree");
      }
    }
  }
  return out;
}

void throw_if_invalid(const std::vector<Violation>& v) {
  if (v.empty()) return;
  std::string msg = "invalid tree decomposition: ";
  msg += v.front().message;
  if (v.size() > 1) msg += " (+" + std::to_string(v.size() - 1) + " more)";
  throw InvalidArgument(msg);
}

}  // namespace

int TreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& n : nodes) w = std::max(w, n.bag_size());
  return static_cast<int>(w) - 1;
}

TreeDecomposition tree_decompose(const BipartiteGraph& g, const Strategy& strategy) {
  const std::size_t p = g.rows.size();
  std::map<int, int> ri, ci;
  for (std::size_t i = 0; i < p; ++i) ri[g.rows[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < g.cols.size(); ++i) ci[g.cols[i]] = static_cast<int>(p + i);
  UGraph u{static_cast<int>(p + g.cols.size()), {}};
  for (auto [a, x] : g.edges) u.edges.emplace_back(ri.at(a), ci.at(x));
  return decompose(u, strategy, GraphKind::bipartite, p, g.rows, g.cols);
}

TreeDecomposition tree_decompose(const SymmetricGraph& g, const Strategy& strategy) {
  std::map<int, int> vi;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) vi[g.vertices[i]] = static_cast<int>(i);
  UGraph u{static_cast<int>(g.vertices.size()), {}};
  for (auto [i, j] : g.edges) u.edges.emplace_back(vi.at(i), vi.at(j));
  return decompose(u, strategy, GraphKind::symmetric, 0, {}, g.vertices);
}

std::vector<Violation> validate_decomposition(const BipartiteGraph& g, const TreeDecomposition& td) {
  std::map<int, int> ri, ci;
  std::vector<std::string> names;
  for (int a : g.rows) {
    ri[a] = static_cast<int>(names.size());
    names.push_back("row " + std::to_string(a));
  }
  for (int x : g.cols) {
    ci[x] = static_cast<int>(names.size());
    names.push_back("col " + std::to_string(x));
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [a, x] : g.edges) edges.emplace_back(ri.at(a), ci.at(x));
  auto key = [&](bool is_row, int label) {
    const auto& m = is_row ? ri : ci;
    auto it = m.find(label);
    return it == m.end() ? -1 : it->second;
  };
  auto out = validate(td, static_cast<int>(names.size()), edges, key, names);
  if (td.kind != GraphKind::bipartite) {
    out.insert(out.begin(), {ViolationKind::tree_structure, "decomposition is not bipartite"});
  }
  return out;
}

std::vector<Violation> validate_decomposition(const SymmetricGraph& g, const TreeDecomposition& td) {
  std::map<int, int> vi;
  std::vector<std::string> names;
  for (int v : g.vertices) {
    vi[v] = static_cast<int>(names.size());
    names.push_back("vertex " + std::to_string(v));
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [i, j] : g.edges) edges.emplace_back(vi.at(i), vi.at(j));
  auto key = [&](bool is_row, int label) {
    if (is_row) return -1;
    auto it = vi.find(label);
    return it == vi.end() ? -1 : it->second;
  };
  auto out = validate(td, static_cast<int>(names.size()), edges, key, names);
  if (td.kind != GraphKind::symmetric) {
    out.insert(out.begin(), {ViolationKind::tree_structure, "decomposition is not symmetric"});
  }
  return out;
}

void require_valid(const BipartiteGraph& g, const TreeDecomposition& td) {
  throw_if_invalid(validate_decomposition(g, td));
}

void require_valid(const SymmetricGraph& g, const TreeDecomposition& td) {
  throw_if_invalid(validate_decomposition(g, td));
}

TreeDecomposition reroot(const TreeDecomposition& td, int node) {
  const int n = static_cast<int>(td.nodes.size());
  if (node < 0 || node >= n) throw InvalidArgument("reroot target out of range");
  std::vector<std::vector<int>> nb(n);
  for (const auto& t : td.nodes) {
    if (t.parent >= 0) {
      nb[t.id].push_back(t.parent);
      nb[t.parent].push_back(t.id);
    }
  }
  for (auto& v : nb) std::sort(v.begin(), v.end());
  std::vector<int> order{node};
  std::vector<int> new_id(n, -1), parent(n, -1);
  new_id[node] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int v = order[head];
    for (int u : nb[v]) {
      if (new_id[u] >= 0) continue;
      new_id[u] = static_cast<int>(order.size());
      parent[u] = v;
      order.push_back(u);
    }
  }
  if (static_cast<int>(order.size()) != n) throw InvalidArgument("decomposition tree is disconnected");
  TreeDecomposition out;
  out.kind = td.kind;
  out.nodes.resize(n);
  for (int i = 0; i < n; ++i) {
    const int old = order[i];
    TreeNode& t = out.nodes[i];
    t.id = i;
    t.parent = parent[old] < 0 ? -1 : new_id[parent[old]];
    t.bag_rows = td.nodes[old].bag_rows;
    t.bag_cols = td.nodes[old].bag_cols;
  }
  for (int i = 1; i < n; ++i) out.nodes[out.nodes[i].parent].children.push_back(i);
  return out;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::tree_structure: return "tree_structure";
    case ViolationKind::unknown_vertex: return "unknown_vertex";
    case ViolationKind::vertex_coverage: return "vertex_coverage";
    case ViolationKind::edge_coverage: return "edge_coverage";
    case ViolationKind::connectivity: return "connectivity";
  }
  return "unknown";
}

}  // namespace bstw
