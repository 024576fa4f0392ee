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

#include "bstw/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "bstw/errors.hpp"
#include "dp_internal.hpp"

namespace bstw {

namespace {

std::vector<int> support(const WeightVector& w) {
  std::vector<int> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0) throw InvalidArgument("negative multiplicity");
    if (w[i] > 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

// U[rows, cols] with entries at most zero_tol in magnitude set to zero.
CMatrix thresholded(const CMatrix& U, const std::vector<int>& rows, const std::vector<int>& cols, double zero_tol) {
  CMatrix Z(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const Complex v = U(rows[i], cols[j]);
      Z(i, j) = std::abs(v) > zero_tol ? v : Complex(0.0);
    }
  }
  return Z;
}

// Subset table of a bag whose first p entries are rows of Z and the rest columns.
SubsetTable base_table(const CMatrix& Z, const std::vector<int>& local_rows, const std::vector<int>& local_cols,
                       bool negated) {
  const std::size_t p = local_rows.size();
  const std::size_t w = p + local_cols.size();
  detail::check_bag_bits(w);
  const std::uint64_t row_mask = (std::uint64_t{1} << p) - 1;
  SubsetTable t(std::size_t{1} << w, Complex(0.0));
  t[0] = 1.0;
  for (std::uint64_t mask = 1; mask < t.size(); ++mask) {
    const std::uint64_t dm = mask & row_mask;
    const std::uint64_t ym = mask >> p;
    if (std::popcount(dm) != std::popcount(ym)) continue;
    const int a0 = std::countr_zero(dm);
    Complex sum = 0.0;
    for (std::uint64_t rest = ym; rest; rest &= rest - 1) {
      const int x = std::countr_zero(rest);
      const Complex u = Z(local_rows[a0], local_cols[x]);
      if (u != Complex(0.0)) sum += u * t[mask ^ (std::uint64_t{1} << a0) ^ (std::uint64_t{1} << (p + x))];
    }
    t[mask] = sum;
  }
  if (negated) {
    for (std::uint64_t mask = 0; mask < t.size(); ++mask) {
      if (std::popcount(mask & row_mask) & 1) t[mask] = -t[mask];
    }
  }
  return t;
}

// Global ids: rows 0..p-1, columns p..p+q-1; Z is the p x q local matrix.
Complex subset_permanent(const CMatrix& Z, const TreeDecomposition& td, const std::vector<int>& rows,
                         const std::vector<int>& cols) {
  const int p = static_cast<int>(rows.size());
  auto id = [&](bool is_row, int label) {
    const auto& v = is_row ? rows : cols;
    const int pos = static_cast<int>(std::lower_bound(v.begin(), v.end(), label) - v.begin());
    return is_row ? pos : p + pos;
  };
  const detail::DpTree tree = detail::make_dp_tree(td, id);
  auto base = [&](const std::vector<int>& bag, bool negated) {
    std::vector<int> lr, lc;
    for (int v : bag) (v < p ? lr.push_back(v) : lc.push_back(v - p));
    return base_table(Z, lr, lc, negated);
  };
  const SubsetTable root = detail::subset_dp(tree, base);
  return root.back();
}

Complex weighted_permanent(const CMatrix& Z, const std::vector<int>& rcaps, const std::vector<int>& ccaps,
                           const TreeDecomposition& td, const std::vector<int>& rows, const std::vector<int>& cols) {
  const int p = static_cast<int>(rows.size());
  auto id = [&](bool is_row, int label) {
    const auto& v = is_row ? rows : cols;
    const int pos = static_cast<int>(std::lower_bound(v.begin(), v.end(), label) - v.begin());
    return is_row ? pos : p + pos;
  };
  const detail::DpTree tree = detail::make_dp_tree(td, id);
  std::vector<int> caps = rcaps;
  caps.insert(caps.end(), ccaps.begin(), ccaps.end());
  auto base = [&](const std::vector<int>& bag, const std::vector<int>& bcaps, bool negated) {
    const long long size = detail::table_size(bcaps);
    const std::size_t w = bag.size();
    std::vector<long long> stride(w);
    long long s = 1;
    for (std::size_t i = 0; i < w; ++i) {
      stride[i] = s;
      s *= bcaps[i] + 1;
    }
    std::size_t nr = 0;
    while (nr < w && bag[nr] < p) ++nr;
    std::vector<Complex> t(static_cast<std::size_t>(size), Complex(0.0));
    std::vector<int> d(w, 0);
    std::vector<long long> odd;
    t[0] = 1.0;
    for (long long idx = 1; idx < size; ++idx) {
      for (std::size_t i = 0; i < w; ++i) {
        if (++d[i] <= bcaps[i]) break;
        d[i] = 0;
      }
      int rsum = 0, csum = 0, a = -1;
      for (std::size_t i = 0; i < nr; ++i) {
        rsum += d[i];
        if (a < 0 && d[i] > 0) a = static_cast<int>(i);
      }
      for (std::size_t i = nr; i < w; ++i) csum += d[i];
      if (rsum != csum) continue;
      Complex sum = 0.0;
      for (std::size_t x = nr; x < w; ++x) {
        if (d[x] == 0) continue;
        const Complex u = Z(bag[a], bag[x] - p);
        if (u != Complex(0.0)) sum += u * t[idx - stride[a] - stride[x]];
      }
      t[idx] = sum / static_cast<double>(d[a]);
      if (rsum & 1) odd.push_back(idx);
    }
    if (negated) {
      for (long long idx : odd) t[idx] = -t[idx];
    }
    return t;
  };
  const auto root = detail::weighted_dp(tree, caps, base);
  return root.back();
}

void check_weights(const CMatrix& U, const WeightVector& n, const WeightVector& m, int cap) {
  if (static_cast<Eigen::Index>(n.size()) != U.rows() || static_cast<Eigen::Index>(m.size()) != U.cols()) {
    throw InvalidArgument("weight vectors must match the matrix shape");
  }
  if (total(n) != total(m)) throw InvalidArgument("|n| != |m|");
  if (cap < 1) throw InvalidArgument("collision cap must be >= 1");
  for (const auto* w : {&n, &m}) {
    for (int v : *w) {
      if (v < 0) throw InvalidArgument("negative multiplicity");
      if (v > cap) {
        throw CapExceeded("multiplicity " + std::to_string(v) + " exceeds collision cap " + std::to_string(cap));
      }
    }
  }
}

std::vector<int> sorted_copy(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

Complex permanent_ryser(const CMatrix& U) {
  if (U.rows() != U.cols()) throw InvalidArgument("permanent needs a square matrix");
  const int n = static_cast<int>(U.rows());
  if (n > kRyserMaxSize) {
    throw CapExceeded("Ryser oracle limited to n <= " + std::to_string(kRyserMaxSize));
  }
  if (n == 0) return 1.0;
  std::vector<Complex> row_sum(n, Complex(0.0));
  Complex acc = 0.0;
  std::uint64_t gray = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < count; ++k) {
    const int j = std::countr_zero(k);
    gray ^= std::uint64_t{1} << j;
    if (gray >> j & 1) {
      for (int i = 0; i < n; ++i) row_sum[i] += U(i, j);
    } else {
      for (int i = 0; i < n; ++i) row_sum[i] -= U(i, j);
    }
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= row_sum[i];
    acc += (std::popcount(gray) & 1) ? -prod : prod;
  }
  return (n & 1) ? -acc : acc;
}

Complex PartialPermanentTable::at(const std::vector<int>& D, const std::vector<int>& Y) const {
  std::uint64_t mask = 0;
  for (int a : D) {
    auto it = std::find(rows.begin(), rows.end(), a);
    if (it == rows.end()) throw InvalidArgument("row " + std::to_string(a) + " not in table");
    mask |= std::uint64_t{1} << (it - rows.begin());
  }
  for (int x : Y) {
    auto it = std::find(cols.begin(), cols.end(), x);
    if (it == cols.end()) throw InvalidArgument("column " + std::to_string(x) + " not in table");
    mask |= std::uint64_t{1} << (rows.size() + (it - cols.begin()));
  }
  return values[mask];
}

PartialPermanentTable base_partial_permanents(const CMatrix& U, const std::vector<int>& rows,
                                              const std::vector<int>& cols) {
  build_bipartite_graph(U, rows, cols);
  detail::check_bag_bits(rows.size() + cols.size());
  const CMatrix Z = thresholded(U, rows, cols, 0.0);
  std::vector<int> lr(rows.size()), lc(cols.size());
  for (std::size_t i = 0; i < lr.size(); ++i) lr[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < lc.size(); ++i) lc[i] = static_cast<int>(i);
  return {rows, cols, base_table(Z, lr, lc, false)};
}

Complex permanent_treedp(const CMatrix& U, const std::vector<int>& rows, const std::vector<int>& cols,
                         const TreeDecomposition& td, double zero_tol) {
  if (rows.size() != cols.size()) throw InvalidArgument("permanent needs |A| = |X|");
  const BipartiteGraph g = build_bipartite_graph(U, rows, cols, zero_tol);
  if (rows.empty()) return 1.0;
  require_valid(g, td);
  const auto r = sorted_copy(rows);
  const auto c = sorted_copy(cols);
  return subset_permanent(thresholded(U, r, c, zero_tol), td, r, c);
}

BipartiteGraph weighted_bipartite_graph(const CMatrix& U, const WeightVector& n, const WeightVector& m,
                                        double zero_tol) {
  return build_bipartite_graph(U, support(n), support(m), zero_tol);
}

Complex permanent_treedp_weighted(const CMatrix& U, const WeightVector& n, const WeightVector& m,
                                  const TreeDecomposition& td, int cap, double zero_tol) {
  check_weights(U, n, m, cap);
  const BipartiteGraph g = weighted_bipartite_graph(U, n, m, zero_tol);
  if (g.rows.empty()) return 1.0;
  require_valid(g, td);
  std::vector<int> rc, cc;
  for (int a : g.rows) rc.push_back(n[a]);
  for (int x : g.cols) cc.push_back(m[x]);
  const Complex scaled = weighted_permanent(thresholded(U, g.rows, g.cols, zero_tol), rc, cc, td, g.rows, g.cols);
  return scaled * factorial_product(n) * factorial_product(m);
}

CMatrix repeat_matrix(const CMatrix& U, const WeightVector& n, const WeightVector& m) {
  std::vector<int> r, c;
  for (std::size_t i = 0; i < n.size(); ++i) r.insert(r.end(), n[i], static_cast<int>(i));
  for (std::size_t j = 0; j < m.size(); ++j) c.insert(c.end(), m[j], static_cast<int>(j));
  CMatrix out(r.size(), c.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = U(r[i], c[j]);
  }
  return out;
}

Complex permanent(const CMatrix& U, const WeightVector& n, const WeightVector& m, Engine engine, int cap,
                  double zero_tol, const Strategy& strategy) {
  check_weights(U, n, m, cap);
  if (total(n) == 0) return 1.0;
  if (engine == Engine::oracle) return permanent_ryser(repeat_matrix(U, n, m));
  const BipartiteGraph g = weighted_bipartite_graph(U, n, m, zero_tol);
  const TreeDecomposition td = tree_decompose(g, strategy);
  const bool collision_free =
      std::all_of(n.begin(), n.end(), [](int v) { return v <= 1; }) &&
      std::all_of(m.begin(), m.end(), [](int v) { return v <= 1; });
  const CMatrix Z = thresholded(U, g.rows, g.cols, zero_tol);
  if (collision_free) return subset_permanent(Z, td, g.rows, g.cols);
  std::vector<int> rc, cc;
  for (int a : g.rows) rc.push_back(n[a]);
  for (int x : g.cols) cc.push_back(m[x]);
  return weighted_permanent(Z, rc, cc, td, g.rows, g.cols) * factorial_product(n) * factorial_product(m);
}

}  // namespace bstw
