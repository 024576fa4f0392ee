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

#ifndef BSTW_BAND_HPP
#define BSTW_BAND_HPP

#include "bstw/graph.hpp"
#include "bstw/lattice.hpp"
#include "bstw/types.hpp"

namespace bstw {

/// Graph that any circuit truncated at reach kappa*L can induce for `outcome`.
/// Rows are occupied output modes, columns are all source modes; (j, s) is an
/// edge when s lies within reach of j.
BipartiteGraph geometric_bipartite_graph(const Lattice& lattice, const WeightVector& outcome, double kappa,
                                         DistanceMetric metric = DistanceMetric::chebyshev);

/// Occupied output modes; {i, j} is an edge when some source reaches both,
/// {i, i} when some source reaches i.
SymmetricGraph geometric_symmetric_graph(const Lattice& lattice, const WeightVector& outcome, double kappa,
                                         DistanceMetric metric = DistanceMetric::chebyshev);

/// Decomposition obtained by sweeping the lattice along its first axis.
///
/// Vertices are eliminated cell by cell (first axis major, then site order,
/// outputs before the cell's source), so every bag lies inside a spatial band
/// whose thickness is set by the reach.
TreeDecomposition band_decomposition(const Lattice& lattice, const WeightVector& outcome, double kappa,
                                     GraphKind kind, DistanceMetric metric = DistanceMetric::chebyshev);

}  // namespace bstw

#endif  // BSTW_BAND_HPP
