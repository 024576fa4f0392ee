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

#include "bstw/hafnian.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>

#include "bstw/errors.hpp"
#include "bstw/oracles.hpp"
#include "dp_internal.hpp"

namespace bstw {

namespace {

CMatrix thresholded(const CMatrix& B, const std::vector<int>& v, double zero_tol) {
  CMatrix Z(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      const Complex b = B(v[i], v[j]);
      Z(i, j) = std::abs(b) > zero_tol ? b : Complex(0.0);
    }
  }
  return Z;
}

CVector thresholded_loops(const CVector& loops, const std::vector<int>& v, double zero_tol) {
  CVector L(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    L(i) = std::abs(loops(v[i])) > zero_tol ? loops(v[i]) : Complex(0.0);
  }
  return L;
}

// B with its diagonal replaced by loops.
CMatrix filled(const CMatrix& B, const CVector& loops) {
  CMatrix F = B;
  F.diagonal() = loops;
  return F;
}

void check_square(const CMatrix& B) {
  if (B.rows() != B.cols()) throw InvalidArgument("loop hafnian needs a square matrix");
}

// Subset table over local vertices `bag` (indices into Z), pivoting on the lowest bit.
SubsetTable base_table(const CMatrix& Z, const std::vector<int>& bag, bool negated) {
  const std::size_t w = bag.size();
  detail::check_bag_bits(w);
  const double sign = negated ? -1.0 : 1.0;
  SubsetTable t(std::size_t{1} << w, Complex(0.0));
  t[0] = 1.0;
  for (std::uint64_t mask = 1; mask < t.size(); ++mask) {
    const int a = std::countr_zero(mask);
    const std::uint64_t rest = mask ^ (std::uint64_t{1} << a);
    Complex sum = Z(bag[a], bag[a]) * t[rest];
    for (std::uint64_t r = rest; r; r &= r - 1) {
      const int x = std::countr_zero(r);
      const Complex b = Z(bag[a], bag[x]);
      if (b != Complex(0.0)) sum += b * t[rest ^ (std::uint64_t{1} << x)];
    }
    t[mask] = sign * sum;
  }
  return t;
}

// Scaled weighted table lhaf(y) / y! over a bag with digit caps.
// Z(a, a) weighs pairs between copies of a; L(a) weighs loops.
std::vector<Complex> weighted_base(const CMatrix& Z, const CVector& L, const std::vector<int>& bag,
                                   const std::vector<int>& caps, bool negated) {
  const long long size = detail::table_size(caps);
  const std::size_t w = bag.size();
  std::vector<long long> stride(w);
  long long s = 1;
  for (std::size_t i = 0; i < w; ++i) {
    stride[i] = s;
    s *= caps[i] + 1;
  }
  const double sign = negated ? -1.0 : 1.0;
  std::vector<Complex> t(static_cast<std::size_t>(size), Complex(0.0));
  std::vector<int> d(w, 0);
  t[0] = 1.0;
  for (long long idx = 1; idx < size; ++idx) {
    for (std::size_t i = 0; i < w; ++i) {
      if (++d[i] <= caps[i]) break;
      d[i] = 0;
    }
    std::size_t a = 0;
    while (d[a] == 0) ++a;
    const long long base = idx - stride[a];
    const Complex loop = L(bag[a]);
    const Complex self = Z(bag[a], bag[a]);
    Complex sum = 0.0;
    if (loop != Complex(0.0)) sum += loop * t[base];
    if (d[a] >= 2 && self != Complex(0.0)) sum += self * t[base - stride[a]];
    for (std::size_t x = a + 1; x < w; ++x) {
      if (d[x] == 0) continue;
      const Complex b = Z(bag[a], bag[x]);
      if (b != Complex(0.0)) sum += b * t[base - stride[x]];
    }
    t[idx] = sign * sum / static_cast<double>(d[a]);
  }
  return t;
}

std::vector<int> support(const WeightVector& m) {
  std::vector<int> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 0) throw InvalidArgument("negative multiplicity");
    if (m[i] > 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::function<int(bool, int)> position_map(const std::vector<int>& sorted_labels) {
  return [&sorted_labels](bool, int label) {
    return static_cast<int>(std::lower_bound(sorted_labels.begin(), sorted_labels.end(), label) -
                            sorted_labels.begin());
  };
}

Complex subset_lhaf(const CMatrix& Z, const TreeDecomposition& td, const std::vector<int>& labels) {
  const detail::DpTree tree = detail::make_dp_tree(td, position_map(labels));
  auto base = [&](const std::vector<int>& bag, bool negated) { return base_table(Z, bag, negated); };
  return detail::subset_dp(tree, base).back();
}

std::vector<Complex> weighted_lhaf_root(const CMatrix& Z, const CVector& L, const TreeDecomposition& td,
                                        const std::vector<int>& labels, const std::vector<int>& caps) {
  const detail::DpTree tree = detail::make_dp_tree(td, position_map(labels));
  auto base = [&](const std::vector<int>& bag, const std::vector<int>& bcaps, bool negated) {
    return weighted_base(Z, L, bag, bcaps, negated);
  };
  return detail::weighted_dp(tree, caps, base);
}

void check_caps(const WeightVector& m, int cap) {
  if (cap < 1) throw InvalidArgument("collision cap must be >= 1");
  for (int v : m) {
    if (v < 0) throw InvalidArgument("negative multiplicity");
    if (v > cap) {
      throw CapExceeded("multiplicity " + std::to_string(v) + " exceeds collision cap " + std::to_string(cap));
    }
  }
}

}  // namespace

Complex loop_hafnian_bruteforce(const CMatrix& B) {
  check_square(B);
  const int n = static_cast<int>(B.rows());
  if (n > kMatchingOracleMaxSize) {
    throw CapExceeded("matching oracle limited to n <= " + std::to_string(kMatchingOracleMaxSize));
  }
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, int first) -> Complex {
    while (first < n && used[first]) ++first;
    if (first == n) return 1.0;
    used[first] = 1;
    Complex sum = B(first, first) * self(self, first + 1);
    for (int j = first + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      sum += B(first, j) * self(self, first + 1);
      used[j] = 0;
    }
    used[first] = 0;
    return sum;
  };
  return rec(rec, 0);
}

Complex hafnian_bruteforce(const CMatrix& B) {
  check_square(B);
  const int n = static_cast<int>(B.rows());
  if (n > kHafnianPermutationMaxSize) {
    throw CapExceeded("permutation hafnian oracle limited to n <= " + std::to_string(kHafnianPermutationMaxSize));
  }
  if (n % 2) return 0.0;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex sum = 0.0;
  do {
    Complex prod = 1.0;
    for (int i = 0; i < n; i += 2) prod *= B(perm[i], perm[i + 1]);
    sum += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  double norm = 1.0;
  for (int i = 1; i <= n / 2; ++i) norm *= 2.0 * i;
  return sum / norm;
}

Complex t_poly(int k, Complex a) {
  if (k < 0) throw InvalidArgument("t_poly needs k >= 0");
  Complex prev = 1.0;
  if (k == 0) return prev;
  Complex cur = a;
  for (int j = 2; j <= k; ++j) {
    const Complex next = a * (cur + static_cast<double>(j - 1) * prev);
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex PartialLhafTable::at(const std::vector<int>& Y) const {
  std::uint64_t mask = 0;
  for (int y : Y) {
    auto it = std::find(vertices.begin(), vertices.end(), y);
    if (it == vertices.end()) throw InvalidArgument("vertex " + std::to_string(y) + " not in table");
    mask |= std::uint64_t{1} << (it - vertices.begin());
  }
  return values[mask];
}

PartialLhafTable base_partial_lhaf(const CMatrix& B, const std::vector<int>& vertices) {
  check_square(B);
  build_symmetric_graph(B, vertices);
  const CMatrix Z = thresholded(B, vertices, 0.0);
  std::vector<int> local(vertices.size());
  std::iota(local.begin(), local.end(), 0);
  return {vertices, base_table(Z, local, false)};
}

PartialLhafTable base_partial_lhaf(const CMatrix& B) {
  std::vector<int> all(B.rows());
  std::iota(all.begin(), all.end(), 0);
  return base_partial_lhaf(B, all);
}

Complex loop_hafnian_treedp(const CMatrix& B, const TreeDecomposition& td, double zero_tol) {
  check_square(B);
  if (B.rows() == 0) return 1.0;
  std::vector<int> all(B.rows());
  std::iota(all.begin(), all.end(), 0);
  const SymmetricGraph g = build_symmetric_graph(B, all, zero_tol);
  require_valid(g, td);
  return subset_lhaf(thresholded(B, all, zero_tol), td, all);
}

SymmetricGraph weighted_symmetric_graph(const CMatrix& B, const WeightVector& m, double zero_tol) {
  check_square(B);
  if (static_cast<Eigen::Index>(m.size()) != B.rows()) throw InvalidArgument("weight vector must match matrix size");
  return build_symmetric_graph(B, support(m), zero_tol);
}

Complex loop_hafnian_treedp_weighted(const CMatrix& B, const WeightVector& m, const TreeDecomposition& td, int cap,
                                     double zero_tol) {
  check_caps(m, cap);
  const SymmetricGraph g = weighted_symmetric_graph(B, m, zero_tol);
  if (g.vertices.empty()) return 1.0;
  require_valid(g, td);
  std::vector<int> caps;
  for (int v : g.vertices) caps.push_back(m[v]);
  const auto root = weighted_lhaf_root(thresholded(B, g.vertices, zero_tol),
                                       thresholded_loops(B.diagonal(), g.vertices, zero_tol), td, g.vertices, caps);
  return root.back() * factorial_product(m);
}

Complex loop_hafnian(const CMatrix& B, const WeightVector& m, Engine engine, int cap, double zero_tol) {
  check_square(B);
  return loop_hafnian_filled(B, B.diagonal(), m, engine, cap, zero_tol);
}

Complex loop_hafnian_filled(const CMatrix& B, const CVector& loops, const WeightVector& m, Engine engine, int cap,
                            double zero_tol, const Strategy& strategy) {
  check_square(B);
  if (loops.size() != B.rows()) throw InvalidArgument("loops vector must match matrix size");
  check_caps(m, cap);
  const SymmetricGraph g = weighted_symmetric_graph(filled(B, loops), m, zero_tol);
  if (g.vertices.empty()) return 1.0;
  if (engine == Engine::oracle) return loop_hafnian_multiset(B, loops, m);
  const TreeDecomposition td = tree_decompose(g, strategy);
  const CMatrix Z = thresholded(B, g.vertices, zero_tol);
  const CVector L = thresholded_loops(loops, g.vertices, zero_tol);
  if (std::all_of(m.begin(), m.end(), [](int v) { return v <= 1; })) {
    CMatrix Zf = Z;
    Zf.diagonal() = L;
    return subset_lhaf(Zf, td, g.vertices);
  }
  std::vector<int> caps;
  for (int v : g.vertices) caps.push_back(m[v]);
  return weighted_lhaf_root(Z, L, td, g.vertices, caps).back() * factorial_product(m);
}

std::vector<Complex> loop_hafnian_profile(const CMatrix& B, const CVector& loops, const WeightVector& m, int vertex,
                                          int vertex_cap, Engine engine, double zero_tol,
                                          const Strategy& strategy) {
  check_square(B);
  if (loops.size() != B.rows()) throw InvalidArgument("loops vector must match matrix size");
  if (static_cast<Eigen::Index>(m.size()) != B.rows()) throw InvalidArgument("weight vector must match matrix size");
  if (vertex < 0 || vertex >= B.rows()) throw InvalidArgument("profile vertex out of range");
  if (vertex_cap < 0) throw InvalidArgument("profile cap must be nonnegative");
  WeightVector w = m;
  std::vector<Complex> out(vertex_cap + 1);
  if (engine == Engine::oracle) {
    for (int y = 0; y <= vertex_cap; ++y) {
      w[vertex] = y;
      out[y] = loop_hafnian_multiset(B, loops, w);
    }
    return out;
  }
  w[vertex] = std::max(1, vertex_cap);
  const SymmetricGraph g = weighted_symmetric_graph(filled(B, loops), w, zero_tol);
  TreeDecomposition td = tree_decompose(g, strategy);
  for (const auto& node : td.nodes) {
    if (std::binary_search(node.bag_cols.begin(), node.bag_cols.end(), vertex)) {
      td = reroot(td, node.id);
      break;
    }
  }
  std::vector<int> caps;
  for (int v : g.vertices) caps.push_back(v == vertex ? vertex_cap : m[v]);
  const auto root = weighted_lhaf_root(thresholded(B, g.vertices, zero_tol),
                                       thresholded_loops(loops, g.vertices, zero_tol), td, g.vertices, caps);
  // Root digits: saturated everywhere except the profile vertex.
  const auto& bag = td.nodes[0].bag_cols;
  long long stride = 1, base = 0, vstride = 0;
  for (int v : bag) {
    const int c = v == vertex ? vertex_cap : m[v];
    if (v == vertex) {
      vstride = stride;
    } else {
      base += c * stride;
    }
    stride *= c + 1;
  }
  WeightVector others = m;
  others[vertex] = 0;
  const double fact = factorial_product(others);
  double yfact = 1.0;
  for (int y = 0; y <= vertex_cap; ++y) {
    if (y > 0) yfact *= y;
    out[y] = root[base + y * vstride] * fact * yfact;
  }
  return out;
}

}  // namespace bstw
