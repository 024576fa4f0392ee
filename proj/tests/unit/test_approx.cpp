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

#include <bstw/approx.hpp>
#include <bstw/circuits.hpp>
#include <bstw/errors.hpp>
#include <bstw/gaussian.hpp>
#include <bstw/lattice.hpp>
#include <bstw/samplers.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "test_support.hpp"

using namespace bstw;

namespace {

Circuit local_circuit(int dim, int modes, int sources, int depth, std::uint64_t seed) {
  CircuitSpec spec;
  spec.dim = dim;
  spec.modes = modes;
  spec.sources = sources;
  spec.depth = depth;
  spec.seed = seed;
  return build_local_haar_circuit(spec);
}

double unitarity_defect(const CMatrix& W) {
  return (W.adjoint() * W - CMatrix::Identity(W.rows(), W.cols())).norm();
}

}  // namespace

TEST_CASE("wide reach or identity leaves U untouched", "[approx]") {
  const Circuit c = local_circuit(1, 16, 2, 3, 1);
  const auto& src = c.lattice.source_modes();
  TruncationResult t = truncate_unitary(c.U, src, c.lattice, 4.0);
  REQUIRE(t.dU_norm == 0.0);
  REQUIRE((t.U_tilde - c.U).norm() == 0.0);
  t = truncate_unitary(CMatrix::Identity(16, 16), src, c.lattice, 0.0);
  REQUIRE(t.dU_norm == 0.0);
}

TEST_CASE("truncation norm equals the removed mass", "[approx]") {
  const Circuit c = local_circuit(1, 16, 2, 3, 2);
  const auto& src = c.lattice.source_modes();
  const TruncationResult t = truncate_unitary(c.U, src, c.lattice, 0.5);
  double removed = 0.0;
  for (int j = 0; j < 16; ++j) {
    for (int s = 0; s < 16; ++s) {
      if (t.U_tilde(j, s) != c.U(j, s)) {
        REQUIRE(t.U_tilde(j, s) == Complex(0.0));
        removed += std::norm(c.U(j, s));
      }
    }
  }
  REQUIRE(removed > 0.0);
  REQUIRE(std::abs(t.dU_norm * t.dU_norm - removed) < 1e-14);
  double leak = 0.0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    REQUIRE(std::abs(t.leakage[i] - leakage_rate(c.U, src[i], c.lattice, 0.5 * c.lattice.cell_edge())) < 1e-14);
    leak += t.leakage[i];
  }
  REQUIRE(std::abs(leak - removed) < 1e-14);
}

TEST_CASE("leakage is nonincreasing in kappa", "[approx][property]") {
  const Circuit c = local_circuit(1, 32, 4, 6, 3);
  for (int s : c.lattice.source_modes()) {
    double prev = 2.0;
    for (double kappa = 0.0; kappa <= 4.0; kappa += 0.25) {
      const double eta = leakage_rate(c.U, s, c.lattice, kappa * c.lattice.cell_edge());
      REQUIRE(eta <= prev + 1e-15);
      prev = eta;
    }
  }
  REQUIRE(leakage_rate(CMatrix::Identity(32, 32), 0, c.lattice, 1.0) == 0.0);
}

TEST_CASE("unitary extension examples", "[approx]") {
  Rng rng(81, {});
  const CMatrix U = testing::haar_unitary(4, rng);
  ApproxCircuit a = extend_to_unitary(U, U);
  REQUIRE(a.mu < 1e-12);
  CMatrix direct = CMatrix::Zero(8, 8);
  direct.topLeftCorner(4, 4) = U;
  direct.bottomRightCorner(4, 4) = -U;
  // sqrt(1 - sigma^2) turns rounding in sigma into defects near 1e-8.
  REQUIRE((a.W - direct).norm() < 1e-6);
  REQUIRE(a.dW_norm < 1e-6);

  a = extend_to_unitary(U, CMatrix::Zero(4, 4));
  REQUIRE(a.W.topLeftCorner(4, 4).norm() < 1e-14);
  REQUIRE(a.W.bottomRightCorner(4, 4).norm() < 1e-14);
  REQUIRE(unitarity_defect(a.W.topRightCorner(4, 4)) < 1e-10);
  REQUIRE(unitarity_defect(a.W) < 1e-10);

  CMatrix bad = U;
  bad(0, 0) = std::nan("");
  REQUIRE_THROWS_AS(extend_to_unitary(U, bad), NumericalError);
}

TEST_CASE("random truncations satisfy the extension bounds", "[approx][property]") {
  Rng rng(82, {});
  for (int trial = 0; trial < 60; ++trial) {
    const int M = 6 + trial % 5;
    const CMatrix U = testing::haar_unitary(M, rng);
    CMatrix Ut = U;
    for (int i = 0; i < M; ++i) {
      for (int j = 0; j < M; ++j) {
        if (rng.uniform() < 0.3) Ut(i, j) = 0.0;
      }
    }
    for (Rescale mode : {Rescale::divide, Rescale::clamp}) {
      const ApproxCircuit a = extend_to_unitary(U, Ut, mode);
      REQUIRE(unitarity_defect(a.W) < 1e-10);
      REQUIRE(a.mu * a.mu <= a.dU_norm * a.dU_norm + 1e-12);
      if (mode == Rescale::divide) {
        REQUIRE((a.W.topLeftCorner(M, M) - Ut / (1.0 + a.mu)).norm() < 1e-12);
        REQUIRE(a.dW_norm * a.dW_norm <= dw_squared_bound(M, a.dU_norm) + 1e-12);
      }
    }
  }
}

TEST_CASE("approximate SPBS with exact circuit matches exact sampling", "[approx][spbs]") {
  Rng rng(83, {});
  const CMatrix U = testing::haar_unitary(5, rng);
  const ApproxCircuit a = extend_to_unitary(U, U);
  SamplerConfig cfg;
  cfg.seed = 12;
  for (std::uint64_t i = 0; i < 300; ++i) {
    const auto x = approx_spbs_sample(a, {0, 2, 3}, cfg, i);
    REQUIRE(x.flag == SampleFlag::ok);
    REQUIRE(x.m == spbs_sample(U, {0, 2, 3}, cfg, i).m);
  }
  const Pmf p = approx_spbs_distribution(a, {0, 2, 3});
  REQUIRE(p.out_mass < 1e-12);
  REQUIRE(pmf_tvd(p, spbs_exact_distribution(U, {0, 2, 3})) < 1e-12);
}

TEST_CASE("approximate SPBS obeys the TVD bound and out rate", "[approx][spbs]") {
  const Circuit c = local_circuit(1, 6, 2, 2, 4);
  const auto& src = c.lattice.source_modes();
  const ApproxCircuit a = approximate_circuit(c.U, src, c.lattice, 0.5);
  REQUIRE(a.dU_norm > 0.0);
  const Pmf exact = spbs_exact_distribution(c.U, src);
  const Pmf approx = approx_spbs_distribution(a, src);
  REQUIRE(pmf_tvd(exact, approx) <= spbs_tvd_bound(2, a.dW_norm));

  SamplerConfig cfg;
  cfg.seed = 6;
  const int n = 20000;
  const auto s = sample_batch([&](std::uint64_t i) { return approx_spbs_sample(a, src, cfg, i); }, n, 2);
  double out = 0.0;
  for (const auto& r : s) out += r.flag == SampleFlag::out;
  out /= n;
  const double sigma = std::sqrt(approx.out_mass * (1 - approx.out_mass) / n);
  REQUIRE(std::abs(out - approx.out_mass) < 4 * sigma + 1e-3);
  REQUIRE(empirical_tvd(s, approx) < 0.04);
}

TEST_CASE("approximate GBS with exact circuit matches exact sampling", "[approx][gbs]") {
  Rng rng(84, {});
  const CMatrix U = testing::haar_unitary(3, rng);
  const ApproxCircuit a = extend_to_unitary(U, U);
  SamplerConfig cfg;
  cfg.seed = 31;
  cfg.m_max = 4;
  const ApproxGbsSampler sampler(a, {0, 1}, 0.5, cfg);
  REQUIRE(sampler.out_probability() < 1e-12);
  const GbsSampler exact(squeezed_circuit_state(U, {0, 1}, 0.5), cfg);
  for (std::uint64_t i = 0; i < 100; ++i) REQUIRE(sampler.sample(i).m == exact.sample(i).m);
  const Pmf p = approx_gbs_distribution(a, {0, 1}, 0.5, 4);
  REQUIRE(pmf_tvd(p, gbs_exact_distribution(U, {0, 1}, 0.5, 4)) < 1e-10);
}

TEST_CASE("approximate GBS on a truncated two-mode circuit", "[approx][gbs]") {
  Rng rng(85, {});
  const double r = 0.3;
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix U = testing::haar_unitary(2, rng);
    CMatrix Ut = U;
    Ut(1, 0) = 0.0;
    const ApproxCircuit a = extend_to_unitary(U, Ut);
    const double dist = (extended_exact_state(U, {0}, r).V - extended_approx_state(a, {0}, r).V).norm();
    REQUIRE(dist <= covariance_distance_bound(2, 1, r, a.dW_norm) + 1e-12);
    const Pmf exact = gbs_exact_distribution(U, {0}, r, 4);
    const Pmf approx = approx_gbs_distribution(a, {0}, r, 4);
    REQUIRE(pmf_tvd(exact, approx) <= gbs_tvd_bound(1, r, dist));
  }
}

TEST_CASE("approximate GBS out rate matches the virtual-mode vacuum", "[approx][gbs]") {
  const Circuit c = local_circuit(1, 4, 2, 2, 5);
  const auto& src = c.lattice.source_modes();
  CMatrix Ut = c.U;
  Ut(3, src[0]) = 0.0;
  Ut(0, src[1]) = 0.0;
  const ApproxCircuit a = extend_to_unitary(c.U, Ut);
  SamplerConfig cfg;
  cfg.seed = 4;
  cfg.m_max = 4;
  const ApproxGbsSampler sampler(a, src, 0.5, cfg);
  const double p_out = sampler.out_probability();
  REQUIRE(p_out > 0.0);
  const int n = 20000;
  double out = 0.0;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n); ++i) out += sampler.sample(i).flag == SampleFlag::out;
  out /= n;
  REQUIRE(std::abs(out - p_out) < 4 * std::sqrt(p_out * (1 - p_out) / n));
}

TEST_CASE("extension bounds hold on random lattice truncations", "[approx][property]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Circuit c = local_circuit(1, 8, 2, 1 + static_cast<int>(seed % 4), seed);
    const auto& src = c.lattice.source_modes();
    const ApproxCircuit a = approximate_circuit(c.U, src, c.lattice, 0.5);
    const double dist = (extended_exact_state(c.U, src, 0.4).V - extended_approx_state(a, src, 0.4).V).norm();
    REQUIRE(dist <= covariance_distance_bound(8, 2, 0.4, a.dW_norm) + 1e-12);
  }
}

TEST_CASE("leakage bound saturates at the Hoeffding point", "[approx]") {
  const double t = 3.0;
  for (int d : {1, 2, 3}) {
    const double l = std::sqrt(2.0 * t * std::log(2.0 * d));
    REQUIRE(std::abs(leakage_bound(d, l, t) - 1.0) < 1e-12);
    REQUIRE(leakage_bound(d, l + 1.0, t) < 1.0);
  }
  REQUIRE_THROWS_AS(leakage_bound(1, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("mean leakage of a 1D ensemble obeys the tail bound", "[approx][property]") {
  const int modes = 64, sources = 4, n_circuits = 200;
  const Lattice lattice(1, modes, sources);
  const double l = 0.5 * lattice.cell_edge();
  for (int depth : {2, 4, 8, 16}) {
    double mean = 0.0;
    for (int c = 0; c < n_circuits; ++c) {
      const Circuit circ = local_circuit(1, modes, sources, depth, ensemble_seed(7, c));
      for (int s : lattice.source_modes()) mean += leakage_rate(circ.U, s, lattice, l);
    }
    mean /= n_circuits * sources;
    // Walk length in steps, two per round in 1D.
    const double t = 2.0 * depth;
    INFO("depth=" << depth << " mean=" << mean << " bound=" << leakage_bound(1, l, t));
    REQUIRE(mean <= leakage_bound(1, l, t));
  }
}

TEST_CASE("approximation rejects bad inputs", "[approx]") {
  const Lattice lattice(1, 8, 2);
  REQUIRE_THROWS_AS(truncate_unitary(CMatrix::Identity(8, 8), {9}, lattice, 1.0), InvalidArgument);
  REQUIRE_THROWS_AS(truncate_unitary(CMatrix::Identity(8, 8), {1}, lattice, -1.0), InvalidArgument);
  REQUIRE_THROWS_AS(extend_to_unitary(CMatrix::Identity(3, 3), CMatrix::Identity(2, 2)), InvalidArgument);
}
