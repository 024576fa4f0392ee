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

#ifndef BSTW_SCALING_HPP
#define BSTW_SCALING_HPP

#include <cstdint>
#include <vector>

#include "bstw/graph.hpp"
#include "bstw/types.hpp"

namespace bstw {

enum class BenchFamily { banded, dense };

/// Random complex Gaussian matrix; banded keeps |i - j| <= bandwidth.
CMatrix bench_matrix(BenchFamily family, int size, int bandwidth, std::uint64_t seed);

struct BenchRow {
  int size = 0;
  /// Decomposition width, or -1 for the oracle.
  int width = -1;
  /// Mean wall time of one permanent evaluation, decomposition excluded.
  double seconds = 0.0;
  Complex value;
};

/// Times the permanent of one bench matrix; repeats until min_seconds elapse.
BenchRow bench_permanent(BenchFamily family, int size, Engine engine, int bandwidth = 3, std::uint64_t seed = 1,
                         double min_seconds = 0.05, const Strategy& strategy = MinFill{});

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace bstw

#endif  // BSTW_SCALING_HPP
