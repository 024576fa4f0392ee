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

#ifndef BSTW_PERMANENT_HPP
#define BSTW_PERMANENT_HPP

#include <vector>

#include "bstw/graph.hpp"
#include "bstw/subset_convolution.hpp"
#include "bstw/types.hpp"

namespace bstw {

inline constexpr int kDefaultCollisionCap = 4;
inline constexpr int kRyserMaxSize = 20;

/// Permanent by Ryser's formula with Gray-code updates, n <= 20.
Complex permanent_ryser(const CMatrix& U);

/// Partial permanents per(D, Y) of a bag.
struct PartialPermanentTable {
  std::vector<int> rows;
  std::vector<int> cols;
  /// Bit i < rows.size() selects rows[i]; the remaining bits select columns.
  SubsetTable values;

  Complex at(const std::vector<int>& D, const std::vector<int>& Y) const;
};

/// All per(D, Y) for D subset of rows, Y subset of cols, by expansion along
/// the smallest row of D.
PartialPermanentTable base_partial_permanents(const CMatrix& U, const std::vector<int>& rows,
                                              const std::vector<int>& cols);

/// Per(U[rows, cols]) by dynamic programming over a bipartite decomposition
/// of build_bipartite_graph(U, rows, cols, zero_tol). Entries with magnitude
/// at most zero_tol are treated as zero.
Complex permanent_treedp(const CMatrix& U, const std::vector<int>& rows, const std::vector<int>& cols,
                         const TreeDecomposition& td, double zero_tol = 0.0);

/// Bipartite graph of the repeated matrix: rows supp(n), columns supp(m).
BipartiteGraph weighted_bipartite_graph(const CMatrix& U, const WeightVector& n, const WeightVector& m,
                                        double zero_tol = 0.0);

/// Permanent of U with row i repeated n[i] times and column j repeated m[j]
/// times. td must be valid for weighted_bipartite_graph(U, n, m, zero_tol).
Complex permanent_treedp_weighted(const CMatrix& U, const WeightVector& n, const WeightVector& m,
                                  const TreeDecomposition& td, int cap = kDefaultCollisionCap,
                                  double zero_tol = 0.0);

/// Repeated-matrix permanent with a min-fill decomposition (treedp) or Ryser
/// on the explicitly repeated matrix (oracle).
Complex permanent(const CMatrix& U, const WeightVector& n, const WeightVector& m, Engine engine,
                  int cap = kDefaultCollisionCap, double zero_tol = 0.0, const Strategy& strategy = MinFill{});

/// Matrix whose rows and columns repeat those of U by n and m.
CMatrix repeat_matrix(const CMatrix& U, const WeightVector& n, const WeightVector& m);

}  // namespace bstw

#endif  // BSTW_PERMANENT_HPP
