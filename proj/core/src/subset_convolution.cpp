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

#include "bstw/subset_convolution.hpp"

#include <bit>
#include <cstdint>

#include "bstw/errors.hpp"

namespace bstw {

namespace {

int ground_size(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0) throw InvalidArgument("subset table size must be a power of two");
  return std::countr_zero(n);
}

}  // namespace

void zeta_transform(std::vector<Complex>& a) {
  const std::size_t n = a.size();
  for (std::size_t bit = 1; bit < n; bit <<= 1) {
    for (std::size_t s = 0; s < n; ++s) {
      if (s & bit) a[s] += a[s ^ bit];
    }
  }
}

void mobius_transform(std::vector<Complex>& a) {
  const std::size_t n = a.size();
  for (std::size_t bit = 1; bit < n; bit <<= 1) {
    for (std::size_t s = 0; s < n; ++s) {
      if (s & bit) a[s] -= a[s ^ bit];
    }
  }
}

SubsetTable subset_convolution(const SubsetTable& f, const SubsetTable& g) {
  if (f.size() != g.size()) throw InvalidArgument("subset convolution over mismatched ground sets");
  const int w = ground_size(f.size());
  const std::size_t n = f.size();

  auto ranked = [&](const SubsetTable& t) {
    std::vector<std::vector<Complex>> out(w + 1);
    for (std::size_t s = 0; s < n; ++s) {
      if (t[s] == Complex(0.0)) continue;
      auto& layer = out[std::popcount(s)];
      if (layer.empty()) layer.assign(n, Complex(0.0));
      layer[s] = t[s];
    }
    for (auto& layer : out) {
      if (!layer.empty()) zeta_transform(layer);
    }
    return out;
  };
  const auto fr = ranked(f);
  const auto gr = ranked(g);

  SubsetTable h(n, Complex(0.0));
  std::vector<Complex> acc;
  for (int k = 0; k <= w; ++k) {
    bool any = false;
    for (int i = 0; i <= k; ++i) {
      if (fr[i].empty() || gr[k - i].empty()) continue;
      if (!any) {
        acc.assign(n, Complex(0.0));
        any = true;
      }
      const auto& a = fr[i];
      const auto& b = gr[k - i];
      for (std::size_t s = 0; s < n; ++s) acc[s] += a[s] * b[s];
    }
    if (!any) continue;
    mobius_transform(acc);
    for (std::size_t s = 0; s < n; ++s) {
      if (std::popcount(s) == k) h[s] = acc[s];
    }
  }
  return h;
}

}  // namespace bstw
