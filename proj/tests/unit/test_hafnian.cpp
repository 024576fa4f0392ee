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

#include <bstw/errors.hpp>
#include <bstw/graph.hpp>
#include <bstw/hafnian.hpp>
#include <bstw/oracles.hpp>

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <vector>

#include "test_support.hpp"

using namespace bstw;
using testing::random_order;

namespace {

std::vector<int> iota(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}


double lhaf_scale(const CMatrix& B) { return testing::loop_hafnian_scale(B); }

TreeDecomposition single_bag(int n) {
  TreeDecomposition td;
  td.kind = GraphKind::symmetric;
  TreeNode t;
  t.bag_cols = iota(n);
  td.nodes.push_back(t);
  return td;
}

CMatrix repeat_symmetric(const CMatrix& B, const WeightVector& m) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < m.size(); ++i) idx.insert(idx.end(), m[i], static_cast<int>(i));
  CMatrix R(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) R(a, b) = B(idx[a], idx[b]);
  }
  return R;
}

}  // namespace

TEST_CASE("matching oracle examples", "[hafnian]") {
  const Complex a(0.4, 0.1), b(-0.3, 0.8), c(1.2, -0.5);
  CMatrix one(1, 1);
  one << a;
  REQUIRE(std::abs(loop_hafnian_bruteforce(one) - a) < 1e-15);
  CMatrix two(2, 2);
  two << a, b, b, c;
  REQUIRE(std::abs(loop_hafnian_bruteforce(two) - (b + a * c)) < 1e-15);
  two << 0.0, b, b, 0.0;
  REQUIRE(std::abs(loop_hafnian_bruteforce(two) - b) < 1e-15);
  REQUIRE_THROWS_AS(loop_hafnian_bruteforce(CMatrix::Ones(13, 13)), CapExceeded);
}

TEST_CASE("loop polynomial", "[hafnian]") {
  const Complex a(0.7, -0.2);
  REQUIRE(t_poly(0, a) == Complex(1.0));
  REQUIRE(t_poly(1, a) == a);
  REQUIRE(std::abs(t_poly(2, a) - (a * a + a)) < 1e-14);
  REQUIRE(std::abs(t_poly(3, a) - (a * a * a + 3.0 * a * a)) < 1e-14);
  for (int k = 0; k <= 8; ++k) {
    const CMatrix C = CMatrix::Constant(k, k, a);
    REQUIRE(testing::relative_error(t_poly(k, a), loop_hafnian_bruteforce(C)) < 1e-12);
  }
  REQUIRE_THROWS_AS(t_poly(-1, a), InvalidArgument);
}

TEST_CASE("base partial loop hafnians", "[hafnian]") {
  const Complex a(0.4, 0.1), b(-0.3, 0.8), c(1.2, -0.5);
  CMatrix one(1, 1);
  one << a;
  auto t = base_partial_lhaf(one);
  REQUIRE(t.at({}) == Complex(1.0));
  REQUIRE(std::abs(t.at({0}) - a) < 1e-15);
  CMatrix two(2, 2);
  two << a, b, b, c;
  REQUIRE(std::abs(base_partial_lhaf(two).at({0, 1}) - (b + a * c)) < 1e-15);

  Rng rng(21, {});
  const CMatrix B = testing::random_symmetric(4, rng);
  t = base_partial_lhaf(B);
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<int> Y;
    for (int i = 0; i < 4; ++i) {
      if (mask >> i & 1) Y.push_back(i);
    }
    CMatrix S(Y.size(), Y.size());
    for (std::size_t p = 0; p < Y.size(); ++p) {
      for (std::size_t q = 0; q < Y.size(); ++q) S(p, q) = B(Y[p], Y[q]);
    }
    REQUIRE(std::abs(t.at(Y) - loop_hafnian_bruteforce(S)) < 1e-12);
  }
}

TEST_CASE("block-diagonal loop hafnian factorizes", "[hafnian]") {
  const Complex a(0.4, 0.1), b(-0.3, 0.8), c(1.2, -0.5), d(0.9, 0.3);
  CMatrix B = CMatrix::Zero(3, 3);
  B(0, 0) = a;
  B(0, 1) = B(1, 0) = b;
  B(1, 1) = c;
  B(2, 2) = d;
  const auto td = tree_decompose(build_symmetric_graph(B, iota(3)), MinFill{});
  REQUIRE(td.width() <= 1);
  REQUIRE(std::abs(loop_hafnian_treedp(B, td) - (b + a * c) * d) < 1e-14);
}

TEST_CASE("banded and dense loop hafnians match the oracle", "[hafnian]") {
  Rng rng(22, {});
  CMatrix B = testing::random_symmetric(8, rng);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (std::abs(i - j) > 1) B(i, j) = 0.0;
    }
  }
  auto td = tree_decompose(build_symmetric_graph(B, iota(8)), BandOrder{iota(8), {}});
  REQUIRE(testing::relative_error(loop_hafnian_treedp(B, td), loop_hafnian_bruteforce(B)) < 1e-10);
  const CMatrix D = testing::random_symmetric(6, rng);
  REQUIRE(testing::relative_error(loop_hafnian_treedp(D, single_bag(6)), loop_hafnian_bruteforce(D)) < 1e-10);
}

TEST_CASE("treedp equals the matching oracle for random sparsity", "[hafnian][property]") {
  Rng rng(23, {});
  double worst = 0.0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform() * 10);
    const bool diag = trial % 2 == 0;
    const CMatrix B = testing::random_symmetric(n, rng, 0.2 + 0.8 * rng.uniform(), diag);
    const Complex ref = loop_hafnian_bruteforce(B);
    const double scale = lhaf_scale(B);
    const auto g = build_symmetric_graph(B, iota(n));
    for (const Strategy& s : {Strategy(MinFill{}), Strategy(MinDegree{}), Strategy(EliminationOrder{random_order(n, rng)}),
                              Strategy(BandOrder{random_order(n, rng), {}})}) {
      worst = std::max(worst, testing::scaled_error(loop_hafnian_treedp(B, tree_decompose(g, s)), ref, scale));
    }
  }
  INFO("worst error " << worst);
  REQUIRE(worst <= 1e-9);
}

TEST_CASE("zero diagonal reduces to the hafnian", "[hafnian][property]") {
  Rng rng(24, {});
  for (int n = 2; n <= 10; n += 2) {
    const CMatrix B = testing::random_symmetric(n, rng, 0.8, false);
    const Complex h = hafnian_bruteforce(B);
    REQUIRE(testing::scaled_error(loop_hafnian(B, WeightVector(n, 1), Engine::treedp), h, lhaf_scale(B)) < 1e-10);
    REQUIRE(testing::scaled_error(loop_hafnian_bruteforce(B), h, lhaf_scale(B)) < 1e-10);
  }
}

TEST_CASE("odd dimension with zero diagonal vanishes", "[hafnian][property]") {
  Rng rng(25, {});
  for (int n = 1; n <= 9; n += 2) {
    const CMatrix B = testing::random_symmetric(n, rng, 1.0, false);
    REQUIRE(std::abs(loop_hafnian(B, WeightVector(n, 1), Engine::treedp)) < 1e-12);
    REQUIRE(std::abs(loop_hafnian_bruteforce(B)) < 1e-12);
  }
}

TEST_CASE("loop hafnian decomposition independence", "[hafnian][property]") {
  Rng rng(26, {});
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + trial % 6;
    const CMatrix B = testing::random_symmetric(n, rng, 0.5);
    const auto g = build_symmetric_graph(B, iota(n));
    const double scale = lhaf_scale(B);
    const Complex a = loop_hafnian_treedp(B, tree_decompose(g, MinFill{}));
    const Complex b = loop_hafnian_treedp(B, tree_decompose(g, EliminationOrder{random_order(n, rng)}));
    const Complex c = loop_hafnian_treedp(B, reroot(tree_decompose(g, MinDegree{}), trial % 2));
    REQUIRE(testing::scaled_error(a, b, scale) < 1e-9);
    REQUIRE(testing::scaled_error(a, c, scale) < 1e-9);
  }
}

TEST_CASE("weighted loop hafnian examples", "[hafnian][weighted]") {
  const Complex a(0.7, -0.2);
  CMatrix one(1, 1);
  one << a;
  const WeightVector two{2};
  const auto td = tree_decompose(weighted_symmetric_graph(one, two), MinFill{});
  REQUIRE(std::abs(loop_hafnian_treedp_weighted(one, two, td) - (a * a + a)) < 1e-14);

  Rng rng(27, {});
  const CMatrix B = testing::random_symmetric(3, rng);
  const WeightVector m{2, 1, 1};
  const auto tdw = tree_decompose(weighted_symmetric_graph(B, m), MinFill{});
  REQUIRE(testing::relative_error(loop_hafnian_treedp_weighted(B, m, tdw),
                                  loop_hafnian_bruteforce(repeat_symmetric(B, m))) < 1e-10);

  const WeightVector ones{1, 0, 1};
  const auto g1 = weighted_symmetric_graph(B, ones);
  const auto td1 = tree_decompose(g1, MinFill{});
  CMatrix S(2, 2);
  S << B(0, 0), B(0, 2), B(2, 0), B(2, 2);
  REQUIRE(testing::relative_error(loop_hafnian_treedp_weighted(B, ones, td1), loop_hafnian_bruteforce(S)) < 1e-12);
}

TEST_CASE("weighted loop hafnian matches enumeration on repeated matrices", "[hafnian][weighted][property]") {
  Rng rng(28, {});
  for (int trial = 0; trial < 200; ++trial) {
    const int size = 1 + static_cast<int>(rng.uniform() * 3);
    const CMatrix B = testing::random_symmetric(size, rng, 0.5 + 0.5 * rng.uniform(), trial % 3 != 0);
    WeightVector m(size);
    for (auto& v : m) v = static_cast<int>(rng.uniform() * 4);
    if (total(m) == 0) continue;
    const CMatrix R = repeat_symmetric(B, m);
    const Complex ref = loop_hafnian_bruteforce(R);
    const double scale = lhaf_scale(R);
    const auto g = weighted_symmetric_graph(B, m);
    const int nv = static_cast<int>(g.vertices.size());
    for (const Strategy& s : {Strategy(MinFill{}), Strategy(EliminationOrder{random_order(nv, rng)}),
                              Strategy(BandOrder{random_order(nv, rng), {}})}) {
      REQUIRE(testing::scaled_error(loop_hafnian_treedp_weighted(B, m, tree_decompose(g, s)), ref, scale) < 1e-9);
    }
    REQUIRE(testing::scaled_error(loop_hafnian(B, m, Engine::treedp), ref, scale) < 1e-9);
    REQUIRE(testing::scaled_error(loop_hafnian(B, m, Engine::oracle), ref, scale) < 1e-9);
    REQUIRE(testing::scaled_error(loop_hafnian_multiset(B, m), ref, scale) < 1e-9);
  }
}

TEST_CASE("filled loop hafnian separates loops from pair weights", "[hafnian][weighted]") {
  Rng rng(29, {});
  for (int trial = 0; trial < 50; ++trial) {
    const int size = 1 + trial % 3;
    const CMatrix B = testing::random_symmetric(size, rng);
    CVector loops(size);
    for (int i = 0; i < size; ++i) loops(i) = testing::complex_normal(rng);
    WeightVector m(size);
    for (auto& v : m) v = static_cast<int>(rng.uniform() * 4);
    CMatrix R = repeat_symmetric(B, m);
    int p = 0;
    for (int i = 0; i < size; ++i) {
      for (int c = 0; c < m[i]; ++c, ++p) R(p, p) = loops(i);
    }
    const Complex ref = loop_hafnian_bruteforce(R);
    const double scale = lhaf_scale(R);
    REQUIRE(testing::scaled_error(loop_hafnian_filled(B, loops, m, Engine::treedp), ref, scale) < 1e-9);
    REQUIRE(testing::scaled_error(loop_hafnian_filled(B, loops, m, Engine::oracle), ref, scale) < 1e-9);
  }
}

TEST_CASE("profile agrees with pointwise filled hafnians", "[hafnian][weighted]") {
  Rng rng(30, {});
  const CMatrix B = testing::random_symmetric(4, rng, 0.7);
  CVector loops(4);
  for (int i = 0; i < 4; ++i) loops(i) = testing::complex_normal(rng);
  const WeightVector m{1, 0, 2, 1};
  for (int vertex = 0; vertex < 4; ++vertex) {
    const auto prof = loop_hafnian_profile(B, loops, m, vertex, 4, Engine::treedp);
    REQUIRE(prof.size() == 5);
    for (int y = 0; y <= 4; ++y) {
      WeightVector my = m;
      my[vertex] = y;
      const Complex ref = loop_hafnian_filled(B, loops, my, Engine::oracle, 8);
      REQUIRE(std::abs(prof[y] - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("loop hafnian errors", "[hafnian]") {
  REQUIRE_THROWS_AS(loop_hafnian(CMatrix::Ones(2, 2), {5, 0}, Engine::treedp), CapExceeded);
  REQUIRE_THROWS_AS(loop_hafnian(CMatrix::Ones(2, 2), {1}, Engine::treedp), InvalidArgument);
  REQUIRE_THROWS_AS(loop_hafnian(CMatrix::Ones(2, 2), {-1, 1}, Engine::treedp), InvalidArgument);
  REQUIRE_THROWS_AS(hafnian_bruteforce(CMatrix::Ones(11, 11)), CapExceeded);
}
