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

#include "bstw/scaling.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>

#include "bstw/errors.hpp"
#include "bstw/permanent.hpp"
#include "bstw/rng.hpp"

namespace bstw {

CMatrix bench_matrix(BenchFamily family, int size, int bandwidth, std::uint64_t seed) {
  if (size < 1 || bandwidth < 0) throw InvalidArgument("bench matrix needs size >= 1 and bandwidth >= 0");
  Rng rng(seed, {static_cast<std::uint64_t>(size)});
  CMatrix U = CMatrix::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      if (family == BenchFamily::banded && std::abs(i - j) > bandwidth) continue;
      U(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0 * size);
    }
  }
  return U;
}

BenchRow bench_permanent(BenchFamily family, int size, Engine engine, int bandwidth, std::uint64_t seed,
                         double min_seconds, const Strategy& strategy) {
  const CMatrix U = bench_matrix(family, size, bandwidth, seed);
  std::vector<int> all(size);
  for (int i = 0; i < size; ++i) all[i] = i;
  BenchRow row;
  row.size = size;
  TreeDecomposition td;
  if (engine == Engine::treedp) {
    td = tree_decompose(build_bipartite_graph(U, all, all), strategy);
    row.width = td.width();
  } else if (size > kRyserMaxSize) {
    throw CapExceeded("oracle permanent limited to size " + std::to_string(kRyserMaxSize));
  }
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  int reps = 0;
  double elapsed = 0.0;
  do {
    row.value = engine == Engine::treedp ? permanent_treedp(U, all, all, td) : permanent_ryser(U);
    ++reps;
    elapsed = std::chrono::duration<double>(clock::now() - start).count();
  } while (elapsed < min_seconds);
  row.seconds = elapsed / reps;
  return row;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("slope fit needs two or more paired points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = sxx - sx * sx / n;
  if (!(den > 0.0)) throw InvalidArgument("slope fit needs distinct x values");
  return (sxy - sx * sy / n) / den;
}

}  // namespace bstw
