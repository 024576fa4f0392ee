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
#include <cmath>
#include <string>

#include "bstw/errors.hpp"
#include "bstw/graph.hpp"

namespace bstw {

namespace {

void check_labels(const std::vector<int>& labels, Eigen::Index bound, const char* what) {
  std::vector<int> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument(std::string("duplicate ") + what + " label");
  }
  for (int l : labels) {
    if (l < 0 || l >= bound) {
      throw InvalidArgument(std::string(what) + " label " + std::to_string(l) + " out of range");
    }
  }
}

}  // namespace

BipartiteGraph build_bipartite_graph(const CMatrix& U, const std::vector<int>& rows,
                                     const std::vector<int>& cols, double zero_tol) {
  if (zero_tol < 0) throw InvalidArgument("zero_tol must be nonnegative");
  check_labels(rows, U.rows(), "row");
  check_labels(cols, U.cols(), "column");
  BipartiteGraph g{rows, cols, {}};
  for (int a : rows) {
    for (int x : cols) {
      if (std::abs(U(a, x)) > zero_tol) g.edges.emplace_back(a, x);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

SymmetricGraph build_symmetric_graph(const CMatrix& B, const std::vector<int>& labels,
                                     double zero_tol, double sym_tol) {
  if (zero_tol < 0) throw InvalidArgument("zero_tol must be nonnegative");
  if (B.rows() != B.cols()) throw InvalidArgument("symmetric graph needs a square matrix");
  check_labels(labels, B.rows(), "vertex");
  SymmetricGraph g{labels, {}};
  for (std::size_t p = 0; p < labels.size(); ++p) {
    for (std::size_t q = p; q < labels.size(); ++q) {
      const int i = labels[p];
      const int j = labels[q];
      if (std::abs(B(i, j) - B(j, i)) > sym_tol) {
        throw InvalidArgument("matrix not symmetric at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
      if (std::abs(B(i, j)) > zero_tol) g.edges.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace bstw
