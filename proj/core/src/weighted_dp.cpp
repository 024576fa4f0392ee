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
#include <bit>
#include <cstdint>
#include <string>

#include "bstw/errors.hpp"
#include "dp_internal.hpp"

namespace bstw::detail {

namespace {

std::vector<int> postorder(const DpTree& tree) {
  std::vector<int> order;
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < tree.children[node].size()) {
      const int c = tree.children[node][next++];
      stack.emplace_back(c, 0);
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  return order;
}

// Positions of the common vertices of two sorted bags.
void intersect(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& pa, std::vector<int>& pb) {
  pa.clear();
  pb.clear();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      pa.push_back(static_cast<int>(i++));
      pb.push_back(static_cast<int>(j++));
    }
  }
}

struct Radix {
  std::vector<int> caps;
  std::vector<long long> stride;
  long long size = 1;
  std::vector<int> digits;  // size * rank

  explicit Radix(std::vector<int> c) : caps(std::move(c)), stride(caps.size()) {
    for (std::size_t i = 0; i < caps.size(); ++i) {
      stride[i] = size;
      size *= caps[i] + 1;
    }
    digits.assign(static_cast<std::size_t>(size) * caps.size(), 0);
    for (long long idx = 0; idx < size; ++idx) {
      long long rest = idx;
      for (std::size_t i = 0; i < caps.size(); ++i) {
        digits[idx * caps.size() + i] = static_cast<int>(rest % (caps[i] + 1));
        rest /= caps[i] + 1;
      }
    }
  }
  const int* at(long long idx) const { return digits.data() + idx * caps.size(); }
};

// h(y) = sum over z <= y of a(z) b(y - z), truncated at the radix caps.
std::vector<Complex> additive_convolution(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                          const Radix& r) {
  std::vector<long long> na, nb;
  for (long long i = 0; i < r.size; ++i) {
    if (a[i] != Complex(0.0)) na.push_back(i);
    if (b[i] != Complex(0.0)) nb.push_back(i);
  }
  std::vector<Complex> h(static_cast<std::size_t>(r.size), Complex(0.0));
  const std::size_t rank = r.caps.size();
  for (long long i : na) {
    const int* di = r.at(i);
    for (long long j : nb) {
      const int* dj = r.at(j);
      bool fits = true;
      for (std::size_t k = 0; k < rank; ++k) {
        if (di[k] + dj[k] > r.caps[k]) {
          fits = false;
          break;
        }
      }
      if (fits) h[i + j] += a[i] * b[j];
    }
  }
  return h;
}

}  // namespace

void check_bag_bits(std::size_t bits) {
  if (bits > static_cast<std::size_t>(kMaxBagBits)) {
    throw CapExceeded("bag of " + std::to_string(bits) + " vertices exceeds the cap of " +
                      std::to_string(kMaxBagBits));
  }
}

long long table_size(const std::vector<int>& caps) {
  long long size = 1;
  for (int c : caps) {
    size *= c + 1;
    if (size > kMaxWeightedTable) {
      throw CapExceeded("weighted bag table exceeds " + std::to_string(kMaxWeightedTable) + " entries");
    }
  }
  return size;
}

DpTree make_dp_tree(const TreeDecomposition& td, const std::function<int(bool, int)>& id) {
  DpTree t;
  const std::size_t n = td.nodes.size();
  t.bags.resize(n);
  t.parent.resize(n);
  t.children.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const TreeNode& node = td.nodes[i];
    for (int a : node.bag_rows) t.bags[i].push_back(id(true, a));
    for (int x : node.bag_cols) t.bags[i].push_back(id(false, x));
    std::sort(t.bags[i].begin(), t.bags[i].end());
    t.parent[i] = node.parent;
    t.children[i] = node.children;
  }
  return t;
}

SubsetTable subset_dp(const DpTree& tree, const BaseFn& base) {
  std::vector<SubsetTable> table(tree.bags.size());
  std::vector<int> pt, pc;
  for (int t : postorder(tree)) {
    const auto& bag = tree.bags[t];
    check_bag_bits(bag.size());
    SubsetTable acc = base(bag, false);
    SubsetTable neg;
    for (int c : tree.children[t]) {
      if (neg.empty()) neg = base(bag, true);
      const auto& cbag = tree.bags[c];
      intersect(bag, cbag, pt, pc);
      const std::size_t k = pt.size();
      std::uint64_t forgotten = (std::uint64_t{1} << cbag.size()) - 1;
      for (int p : pc) forgotten &= ~(std::uint64_t{1} << p);
      const std::size_t local = std::size_t{1} << k;
      std::vector<std::uint64_t> tmask(local, 0), cmask(local, 0);
      SubsetTable f(local), g(local);
      for (std::size_t s = 1; s < local; ++s) {
        const int low = std::countr_zero(s);
        tmask[s] = tmask[s & (s - 1)] | (std::uint64_t{1} << pt[low]);
        cmask[s] = cmask[s & (s - 1)] | (std::uint64_t{1} << pc[low]);
      }
      for (std::size_t s = 0; s < local; ++s) {
        f[s] = neg[tmask[s]];
        g[s] = table[c][forgotten | cmask[s]];
      }
      const SubsetTable q = subset_convolution(f, g);
      SubsetTable qt(acc.size(), Complex(0.0));
      for (std::size_t s = 0; s < local; ++s) qt[tmask[s]] = q[s];
      acc = subset_convolution(acc, qt);
      SubsetTable().swap(table[c]);
    }
    table[t] = std::move(acc);
  }
  return std::move(table[0]);
}

std::vector<Complex> weighted_dp(const DpTree& tree, const std::vector<int>& caps, const WeightedBaseFn& base) {
  std::vector<std::vector<Complex>> table(tree.bags.size());
  std::vector<int> pt, pc;
  for (int t : postorder(tree)) {
    const auto& bag = tree.bags[t];
    std::vector<int> tcaps;
    for (int v : bag) tcaps.push_back(caps[v]);
    table_size(tcaps);
    const Radix rt(tcaps);
    std::vector<Complex> acc = base(bag, tcaps, false);
    std::vector<Complex> neg;
    for (int c : tree.children[t]) {
      if (neg.empty()) neg = base(bag, tcaps, true);
      const auto& cbag = tree.bags[c];
      intersect(bag, cbag, pt, pc);
      long long cstride = 1;
      std::vector<long long> stride_c(cbag.size());
      for (std::size_t i = 0; i < cbag.size(); ++i) {
        stride_c[i] = cstride;
        cstride *= caps[cbag[i]] + 1;
      }
      long long saturated = 0;
      {
        std::size_t j = 0;
        for (std::size_t i = 0; i < cbag.size(); ++i) {
          if (j < pc.size() && pc[j] == static_cast<int>(i)) {
            ++j;
          } else {
            saturated += caps[cbag[i]] * stride_c[i];
          }
        }
      }
      std::vector<int> lcaps;
      for (int p : pt) lcaps.push_back(tcaps[p]);
      const Radix rl(lcaps);
      std::vector<long long> tidx(rl.size), cidx(rl.size);
      std::vector<Complex> f(rl.size), g(rl.size);
      for (long long s = 0; s < rl.size; ++s) {
        const int* d = rl.at(s);
        long long ti = 0, ci = saturated;
        for (std::size_t i = 0; i < pt.size(); ++i) {
          ti += d[i] * rt.stride[pt[i]];
          ci += d[i] * stride_c[pc[i]];
        }
        tidx[s] = ti;
        f[s] = neg[ti];
        g[s] = table[c][ci];
      }
      const auto q = additive_convolution(f, g, rl);
      std::vector<Complex> qt(static_cast<std::size_t>(rt.size), Complex(0.0));
      for (long long s = 0; s < rl.size; ++s) qt[tidx[s]] = q[s];
      acc = additive_convolution(acc, qt, rt);
      std::vector<Complex>().swap(table[c]);
    }
    table[t] = std::move(acc);
  }
  return std::move(table[0]);
}

}  // namespace bstw::detail
