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

#ifndef BSTW_HAFNIAN_HPP
#define BSTW_HAFNIAN_HPP

#include <vector>

#include "bstw/graph.hpp"
#include "bstw/permanent.hpp"
#include "bstw/subset_convolution.hpp"
#include "bstw/types.hpp"

namespace bstw {

inline constexpr int kMatchingOracleMaxSize = 12;
inline constexpr int kHafnianPermutationMaxSize = 10;

/// Loop hafnian by enumerating perfect matchings with loops, n <= 12.
Complex loop_hafnian_bruteforce(const CMatrix& B);

/// Hafnian (diagonal ignored) by summing over all permutations, n <= 10.
Complex hafnian_bruteforce(const CMatrix& B);

/// Loop hafnian of the k x k matrix with every entry equal to a.
Complex t_poly(int k, Complex a);

/// Partial loop hafnians lhaf(Y) of all subsets Y of the given vertices.
struct PartialLhafTable {
  std::vector<int> vertices;
  /// Bit i selects vertices[i].
  SubsetTable values;

  Complex at(const std::vector<int>& Y) const;
};

PartialLhafTable base_partial_lhaf(const CMatrix& B, const std::vector<int>& vertices);
PartialLhafTable base_partial_lhaf(const CMatrix& B);

/// lHaf(B) by dynamic programming over a decomposition of
/// build_symmetric_graph(B, {0..n-1}, zero_tol).
Complex loop_hafnian_treedp(const CMatrix& B, const TreeDecomposition& td, double zero_tol = 0.0);

/// Symmetric graph of the repeated matrix on supp(m).
SymmetricGraph weighted_symmetric_graph(const CMatrix& B, const WeightVector& m, double zero_tol = 0.0);

/// lHaf(B_m), B_m repeating row and column i m[i] times. td must be valid for
/// weighted_symmetric_graph(B, m, zero_tol).
Complex loop_hafnian_treedp_weighted(const CMatrix& B, const WeightVector& m, const TreeDecomposition& td,
                                     int cap = kDefaultCollisionCap, double zero_tol = 0.0);

/// lHaf(B_m) with a min-fill decomposition (treedp) or the multiset
/// recursion oracle.
Complex loop_hafnian(const CMatrix& B, const WeightVector& m, Engine engine, int cap = kDefaultCollisionCap,
                     double zero_tol = 0.0);

/// lHaf of B_m with its diagonal then overwritten by the repeated `loops`.
/// Pairs between copies of vertex i keep the weight B(i, i).
Complex loop_hafnian_filled(const CMatrix& B, const CVector& loops, const WeightVector& m, Engine engine,
                            int cap = kDefaultCollisionCap, double zero_tol = 0.0,
                            const Strategy& strategy = MinFill{});

/// loop_hafnian_filled for m' = m with m'[vertex] = 0..vertex_cap, from one DP
/// rooted at a bag containing `vertex`.
std::vector<Complex> loop_hafnian_profile(const CMatrix& B, const CVector& loops, const WeightVector& m, int vertex,
                                          int vertex_cap, Engine engine, double zero_tol = 0.0,
                                          const Strategy& strategy = MinFill{});

}  // namespace bstw

#endif  // BSTW_HAFNIAN_HPP
