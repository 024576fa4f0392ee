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

#ifndef BSTW_LATTICE_HPP
#define BSTW_LATTICE_HPP

#include <vector>

namespace bstw {

/// Distance used to decide geometric reach on the lattice.
enum class DistanceMetric { chebyshev, manhattan };

/// Hypercubic lattice of M = n^d modes tiled by N cubic sublattices of edge L.
///
/// Modes are numbered row-major with coordinate 0 most significant. Each
/// sublattice hosts one source at offset floor((L-1)/2) along every axis.
class Lattice {
 public:
  Lattice(int dim, int modes, int sources);

  int dim() const { return dim_; }
  int modes() const { return modes_; }
  int sources() const { return sources_; }
  int side() const { return side_; }
  int cell_edge() const { return cell_; }

  std::vector<int> coords(int mode) const;
  int mode_at(const std::vector<int>& coords) const;
  int distance(int a, int b, DistanceMetric metric) const;
  /// Sublattice coordinates of a mode.
  std::vector<int> cell_of(int mode) const;

  /// Source modes in increasing order.
  const std::vector<int>& source_modes() const { return source_modes_; }

 private:
  int dim_;
  int modes_;
  int sources_;
  int side_;
  int cell_;
  std::vector<int> source_modes_;
};

/// Integer d-th root of v, or -1 if v is not a perfect power.
int integer_root(int v, int d);

}  // namespace bstw

#endif  // BSTW_LATTICE_HPP
