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

#include "bstw/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "bstw/errors.hpp"

namespace bstw {

int integer_root(int v, int d) {
  if (v < 1 || d < 1) return -1;
  int r = static_cast<int>(std::llround(std::pow(static_cast<double>(v), 1.0 / d)));
  for (int c = std::max(1, r - 1); c <= r + 1; ++c) {
    long long p = 1;
    for (int i = 0; i < d; ++i) p *= c;
    if (p == v) return c;
  }
  return -1;
}

Lattice::Lattice(int dim, int modes, int sources) : dim_(dim), modes_(modes), sources_(sources) {
  if (dim < 1) throw InvalidArgument("lattice dimension must be >= 1");
  if (modes < 1 || sources < 1 || sources > modes) {
    throw InvalidArgument("lattice needs 1 <= sources <= modes");
  }
  side_ = integer_root(modes, dim);
  if (side_ < 0) {
    throw InvalidArgument("modes=" + std::to_string(modes) + " is not a perfect power of dim=" +
                          std::to_string(dim));
  }
  if (modes % sources != 0) throw InvalidArgument("modes must be a multiple of sources");
  cell_ = integer_root(modes / sources, dim);
  if (cell_ < 0 || side_ % cell_ != 0) {
    throw InvalidArgument("(modes/sources)^(1/dim) must be an integer dividing the lattice side");
  }
  const int per_axis = side_ / cell_;
  const int offset = (cell_ - 1) / 2;
  source_modes_.reserve(sources);
  std::vector<int> c(dim, 0);
  for (int s = 0; s < sources; ++s) {
    int rest = s;
    for (int a = dim - 1; a >= 0; --a) {
      c[a] = (rest % per_axis) * cell_ + offset;
      rest /= per_axis;
    }
    source_modes_.push_back(mode_at(c));
  }
}

std::vector<int> Lattice::coords(int mode) const {
  if (mode < 0 || mode >= modes_) throw InvalidArgument("mode " + std::to_string(mode) + " off lattice");
  std::vector<int> c(dim_);
  for (int a = dim_ - 1; a >= 0; --a) {
    c[a] = mode % side_;
    mode /= side_;
  }
  return c;
}

int Lattice::mode_at(const std::vector<int>& coords) const {
  if (static_cast<int>(coords.size()) != dim_) throw InvalidArgument("coordinate rank mismatch");
  int m = 0;
  for (int a = 0; a < dim_; ++a) {
    if (coords[a] < 0 || coords[a] >= side_) throw InvalidArgument("coordinate off lattice");
    m = m * side_ + coords[a];
  }
  return m;
}

int Lattice::distance(int a, int b, DistanceMetric metric) const {
  const auto ca = coords(a);
  const auto cb = coords(b);
  int out = 0;
  for (int i = 0; i < dim_; ++i) {
    const int delta = std::abs(ca[i] - cb[i]);
    out = metric == DistanceMetric::chebyshev ? std::max(out, delta) : out + delta;
  }
  return out;
}

std::vector<int> Lattice::cell_of(int mode) const {
  auto c = coords(mode);
  for (int& v : c) v /= cell_;
  return c;
}

}  // namespace bstw
