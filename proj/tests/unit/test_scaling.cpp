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
#include <bstw/permanent.hpp>
#include <bstw/scaling.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>

#include "test_support.hpp"

using namespace bstw;

TEST_CASE("bench matrices are banded and reproducible", "[scaling]") {
  const CMatrix B = bench_matrix(BenchFamily::banded, 10, 3, 4);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      if (std::abs(i - j) > 3) REQUIRE(B(i, j) == Complex(0.0));
      else REQUIRE(B(i, j) != Complex(0.0));
    }
  }
  REQUIRE((bench_matrix(BenchFamily::banded, 10, 3, 4) - B).norm() == 0.0);
  REQUIRE((bench_matrix(BenchFamily::banded, 10, 3, 5) - B).norm() > 0.0);
  const CMatrix D = bench_matrix(BenchFamily::dense, 6, 0, 4);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) REQUIRE(D(i, j) != Complex(0.0));
  }
  REQUIRE_THROWS_AS(bench_matrix(BenchFamily::dense, 0, 3, 1), InvalidArgument);
}

TEST_CASE("slope fit recovers a line", "[scaling]") {
  REQUIRE(std::abs(fit_slope({1, 2, 3, 4}, {5, 7, 9, 11}) - 2.0) < 1e-12);
  REQUIRE(std::abs(fit_slope({0, 1}, {1, 0}) + 1.0) < 1e-12);
  REQUIRE_THROWS_AS(fit_slope({1}, {1}), InvalidArgument);
  REQUIRE_THROWS_AS(fit_slope({1, 1}, {1, 2}), InvalidArgument);
  REQUIRE_THROWS_AS(fit_slope({1, 2}, {1}), InvalidArgument);
}

TEST_CASE("bench rows agree with the oracle", "[scaling]") {
  for (BenchFamily fam : {BenchFamily::banded, BenchFamily::dense}) {
    const BenchRow tree = bench_permanent(fam, 9, Engine::treedp, 3, 2, 0.0);
    const BenchRow ryser = bench_permanent(fam, 9, Engine::oracle, 3, 2, 0.0);
    REQUIRE(tree.size == 9);
    REQUIRE(ryser.width == -1);
    REQUIRE(tree.width >= 1);
    REQUIRE(tree.seconds > 0.0);
    const double scale = testing::permanent_scale(bench_matrix(fam, 9, 3, 2));
    REQUIRE(testing::scaled_error(tree.value, ryser.value, scale) <= 1e-9);
    REQUIRE(std::abs(ryser.value - permanent_ryser(bench_matrix(fam, 9, 3, 2))) == 0.0);
  }
  REQUIRE(bench_permanent(BenchFamily::banded, 16, Engine::treedp, 3, 1, 0.0).width <= 6);
  REQUIRE_THROWS_AS(bench_permanent(BenchFamily::dense, kRyserMaxSize + 1, Engine::oracle, 3, 1, 0.0), CapExceeded);
}
