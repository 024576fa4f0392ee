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

#include <bstw/circuits.hpp>
#include <bstw/graph.hpp>
#include <bstw/hafnian.hpp>
#include <bstw/permanent.hpp>
#include <bstw/samplers.hpp>
#include <bstw/scaling.hpp>

#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

namespace {

using namespace bstw;

std::vector<int> iota(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void permanent_treedp_family(benchmark::State& state, BenchFamily family) {
  const int n = static_cast<int>(state.range(0));
  const CMatrix U = bench_matrix(family, n, 3, 1);
  const TreeDecomposition td = tree_decompose(build_bipartite_graph(U, iota(n), iota(n)));
  for (auto _ : state) benchmark::DoNotOptimize(permanent_treedp(U, iota(n), iota(n), td));
  state.counters["width"] = td.width();
}

void BM_PermanentBanded(benchmark::State& state) { permanent_treedp_family(state, BenchFamily::banded); }
BENCHMARK(BM_PermanentBanded)->DenseRange(8, 32, 4);

void BM_PermanentDense(benchmark::State& state) { permanent_treedp_family(state, BenchFamily::dense); }
BENCHMARK(BM_PermanentDense)->DenseRange(8, 16, 2);

void BM_PermanentRyser(benchmark::State& state) {
  const CMatrix U = bench_matrix(BenchFamily::dense, static_cast<int>(state.range(0)), 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(permanent_ryser(U));
}
BENCHMARK(BM_PermanentRyser)->DenseRange(8, 16, 2);

void BM_LoopHafnianBanded(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CMatrix B = bench_matrix(BenchFamily::banded, n, 2, 2);
  B = (0.5 * (B + B.transpose())).eval();
  const TreeDecomposition td = tree_decompose(build_symmetric_graph(B, iota(n)));
  for (auto _ : state) benchmark::DoNotOptimize(loop_hafnian_treedp(B, td));
  state.counters["width"] = td.width();
}
BENCHMARK(BM_LoopHafnianBanded)->DenseRange(8, 32, 8);

Circuit bench_circuit(int modes, int sources) {
  CircuitSpec spec;
  spec.dim = 1;
  spec.modes = modes;
  spec.sources = sources;
  spec.depth = 2;
  spec.seed = 3;
  return build_local_haar_circuit(spec);
}

void BM_SpbsSample(benchmark::State& state) {
  const Circuit c = bench_circuit(static_cast<int>(state.range(0)), 4);
  SamplerConfig cfg;
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(spbs_sample(c.U, c.lattice.source_modes(), cfg, i++));
}
BENCHMARK(BM_SpbsSample)->Arg(16)->Arg(32)->Arg(64);

void BM_GbsSample(benchmark::State& state) {
  const Circuit c = bench_circuit(static_cast<int>(state.range(0)), 2);
  SamplerConfig cfg;
  cfg.m_max = 4;
  const GbsSampler sampler(squeezed_circuit_state(c.U, c.lattice.source_modes(), 0.5), cfg);
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(i++));
}
BENCHMARK(BM_GbsSample)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
