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

#ifndef BSTW_GRAPH_HPP
#define BSTW_GRAPH_HPP

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bstw/types.hpp"

namespace bstw {

/// Graph of a matrix restricted to row labels A and column labels X.
struct BipartiteGraph {
  std::vector<int> rows;
  std::vector<int> cols;
  /// (row label, column label), sorted and unique.
  std::vector<std::pair<int, int>> edges;
};

/// Graph of a symmetric matrix; an edge (i, i) is a loop.
struct SymmetricGraph {
  std::vector<int> vertices;
  /// (i, j) with i <= j, sorted and unique.
  std::vector<std::pair<int, int>> edges;
};

enum class GraphKind { bipartite, symmetric };

struct TreeNode {
  int id = 0;
  int parent = -1;
  std::vector<int> children;
  /// Row labels (bipartite only).
  std::vector<int> bag_rows;
  /// Column labels for bipartite graphs, vertex labels for symmetric graphs.
  std::vector<int> bag_cols;

  std::size_t bag_size() const { return bag_rows.size() + bag_cols.size(); }
};

/// Rooted tree of bags. Node 0 is the root and node ids equal their index.
struct TreeDecomposition {
  GraphKind kind = GraphKind::symmetric;
  std::vector<TreeNode> nodes;

  int width() const;
};

struct MinFill {};
struct MinDegree {};
/// Eliminate vertices in the given order.
struct EliminationOrder {
  std::vector<int> order;
};
/// Sliding windows along a linear order of the vertices.
struct BandOrder {
  std::vector<int> order;
  std::optional<int> halfwidth;
};

/// Vertex references inside strategies use a unified index: for a bipartite
/// graph, i < rows.size() names rows[i] and the rest name cols[i - rows.size()];
/// for a symmetric graph the index is the position in `vertices`.
using Strategy = std::variant<MinFill, MinDegree, EliminationOrder, BandOrder>;

enum class ViolationKind { tree_structure, unknown_vertex, vertex_coverage, edge_coverage, connectivity };

struct Violation {
  ViolationKind kind;
  std::string message;
};

BipartiteGraph build_bipartite_graph(const CMatrix& U, const std::vector<int>& rows,
                                     const std::vector<int>& cols, double zero_tol = 0.0);

/// Throws InvalidArgument if B deviates from symmetry by more than sym_tol.
SymmetricGraph build_symmetric_graph(const CMatrix& B, const std::vector<int>& labels,
                                     double zero_tol = 0.0, double sym_tol = 1e-10);

TreeDecomposition tree_decompose(const BipartiteGraph& g, const Strategy& strategy = MinFill{});
TreeDecomposition tree_decompose(const SymmetricGraph& g, const Strategy& strategy = MinFill{});

std::vector<Violation> validate_decomposition(const BipartiteGraph& g, const TreeDecomposition& td);
std::vector<Violation> validate_decomposition(const SymmetricGraph& g, const TreeDecomposition& td);

/// Same decomposition rooted at `node`; nodes are renumbered breadth-first.
TreeDecomposition reroot(const TreeDecomposition& td, int node);

/// Throws InvalidArgument listing the violations when td is not valid for g.
void require_valid(const BipartiteGraph& g, const TreeDecomposition& td);
void require_valid(const SymmetricGraph& g, const TreeDecomposition& td);

const char* to_string(ViolationKind kind);

}  // namespace bstw

#endif  // BSTW_GRAPH_HPP
