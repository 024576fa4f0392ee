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
#include <bstw/gaussian.hpp>
#include <bstw/oracles.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "test_support.hpp"

using namespace bstw;

namespace {

RMatrix random_spd(int n, Rng& rng) {
  RMatrix A(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
  }
  return A * A.transpose() + n * RMatrix::Identity(n, n);
}

GaussianState random_circuit_state(int modes, const std::vector<int>& sources, double r, Rng& rng) {
  return apply_passive_unitary(build_input_state(modes, sources, r), testing::haar_unitary(modes, rng));
}

RMatrix embed_bs(int modes, int i, int j, double theta, double phi) {
  return passive_symplectic(beam_splitter_unitary(modes, i, j, theta, phi));
}

}  // namespace

TEST_CASE("input state examples", "[gaussian]") {
  GaussianState s = build_input_state(3, {}, 0.7);
  REQUIRE((s.V - 0.5 * RMatrix::Identity(6, 6)).norm() < 1e-15);
  s = build_input_state(1, {0}, 1.0);
  REQUIRE(std::abs(s.V(0, 0) - std::exp(2.0) / 2) < 1e-14);
  REQUIRE(std::abs(s.V(1, 1) - std::exp(-2.0) / 2) < 1e-14);
  s = build_input_state(3, {0, 2}, 0.9);
  REQUIRE(std::abs(s.V.determinant() - std::pow(4.0, -3)) < 1e-12);
  REQUIRE(s.d.isZero());
}

TEST_CASE("beam splitter examples", "[gaussian]") {
  Rng rng(41, {});
  const GaussianState sq = build_input_state(2, {0}, 0.6);
  REQUIRE((apply_beam_splitter(sq, 0, 1, 0.0, 0.0).V - sq.V).norm() < 1e-14);

  const GaussianState swapped = apply_beam_splitter(sq, 0, 1, std::numbers::pi / 2, 0.0);
  const GaussianState expected = build_input_state(2, {1}, 0.6);
  REQUIRE((swapped.V - expected.V).norm() < 1e-12);

  const GaussianState mixed = random_circuit_state(3, {0, 1}, 0.5, rng);
  const GaussianState out = apply_beam_splitter(mixed, 0, 2, 2 * std::numbers::pi * rng.uniform(), rng.uniform());
  REQUIRE(std::abs(out.V.determinant() - mixed.V.determinant()) < 1e-12);
  const auto e1 = symplectic_eigenvalues(mixed.V);
  const auto e2 = symplectic_eigenvalues(out.V);
  for (std::size_t k = 0; k < e1.size(); ++k) REQUIRE(std::abs(e1[k] - e2[k]) < 1e-10);
  REQUIRE_THROWS_AS(apply_beam_splitter(sq, 0, 0, 0.1, 0.0), InvalidArgument);
  REQUIRE_THROWS_AS(apply_beam_splitter(sq, 0, 2, 0.1, 0.0), InvalidArgument);
}

TEST_CASE("passive transformations are symplectic", "[gaussian][property]") {
  Rng rng(42, {});
  for (int trial = 0; trial < 20; ++trial) {
    const int M = 1 + trial % 5;
    const RMatrix S = passive_symplectic(testing::haar_unitary(M, rng));
    const RMatrix O = symplectic_form(M);
    REQUIRE((S * O * S.transpose() - O).norm() < 1e-12);
    if (M >= 2) {
      const RMatrix B = embed_bs(M, 0, M - 1, rng.uniform() * 6, rng.uniform() * 6);
      REQUIRE((B * O * B.transpose() - O).norm() < 1e-12);
    }
    const GaussianState s = random_circuit_state(M, {0}, 0.8, rng);
    REQUIRE(satisfies_uncertainty(s));
  }
}

TEST_CASE("ladder basis change round-trips", "[gaussian][property]") {
  Rng rng(43, {});
  const GaussianState s = random_circuit_state(4, {0, 2}, 0.7, rng);
  const ComplexGaussianView v = complex_view(s);
  REQUIRE((covariance_from_sigma(v.Sigma) - s.V).norm() < 1e-12);
  const CMatrix F = quadrature_to_ladder(4);
  REQUIRE((F * F.adjoint() - CMatrix::Identity(8, 8)).norm() < 1e-12);
}

TEST_CASE("B matrix examples", "[gaussian]") {
  const double r = 0.8;
  CMatrix B = b_matrix(CMatrix::Identity(3, 3), {r, 0.0, 0.0});
  REQUIRE(std::abs(B(0, 0) - std::tanh(r)) < 1e-15);
  REQUIRE(B.norm() - std::tanh(r) < 1e-15);
  Rng rng(44, {});
  const CMatrix U = testing::haar_unitary(3, rng);
  REQUIRE(b_matrix(U, {0.0, 0.0, 0.0}).norm() < 1e-15);
}

TEST_CASE("B matrix matches the covariance route", "[gaussian][property]") {
  Rng rng(45, {});
  for (int M = 2; M <= 5; ++M) {
    const CMatrix U = testing::haar_unitary(M, rng);
    std::vector<double> r(M);
    for (auto& x : r) x = rng.uniform();
    const GaussianState s = apply_passive_unitary(build_input_state(M, r), U);
    const ComplexGaussianView v = complex_view(s);
    const CMatrix B = b_matrix(U, r);
    REQUIRE((v.B() - B).norm() < 1e-10);
    CMatrix A = CMatrix::Zero(2 * M, 2 * M);
    A.topLeftCorner(M, M) = B.conjugate();
    A.bottomRightCorner(M, M) = B;
    REQUIRE((v.A - A).norm() < 1e-10);
    REQUIRE(v.gamma.norm() < 1e-12);
  }
}

TEST_CASE("Schur complement examples", "[gaussian]") {
  RMatrix M(2, 2);
  M << 2.0, 1.0, 1.0, 2.0;
  REQUIRE(std::abs(schur_complement(M, {0}, {1})(0, 0) - 1.5) < 1e-15);
  RMatrix D = RMatrix::Zero(4, 4);
  D.topLeftCorner(2, 2) << 3.0, 1.0, 1.0, 2.0;
  D.bottomRightCorner(2, 2) << 5.0, 0.5, 0.5, 1.0;
  REQUIRE((schur_complement(D, {0, 1}, {2, 3}) - D.topLeftCorner(2, 2)).norm() < 1e-15);
  RMatrix S = RMatrix::Zero(2, 2);
  S(0, 0) = 1.0;
  REQUIRE_THROWS_AS(schur_complement(S, {0}, {1}), NumericalError);
}

TEST_CASE("Schur identity on random SPD matrices", "[gaussian][property]") {
  Rng rng(46, {});
  for (int trial = 0; trial < 20; ++trial) {
    const RMatrix M = random_spd(6, rng);
    const auto order = testing::random_order(6, rng);
    const int k = 1 + trial % 5;
    const std::vector<int> keep(order.begin(), order.begin() + k), elim(order.begin() + k, order.end());
    const RMatrix inv = M.inverse();
    RMatrix inv_a(k, k);
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) inv_a(a, b) = inv(keep[a], keep[b]);
    }
    REQUIRE((inv_a - schur_complement(M, keep, elim).inverse()).norm() < 1e-10);
  }
}

TEST_CASE("heterodyne conditioning", "[gaussian]") {
  Rng rng(47, {});
  // Product state: the unmeasured block is untouched.
  const GaussianState prod = build_input_state(3, {0, 1, 2}, 0.4);
  RVector mu(2);
  mu << 0.3, -0.7;
  const GaussianState c = condition_on_heterodyne(prod, {1}, mu);
  REQUIRE(c.modes() == 2);
  REQUIRE((c.V - build_input_state(2, {0, 1}, 0.4).V).norm() < 1e-12);
  REQUIRE(c.d.norm() < 1e-12);

  // Correlated two-mode state: conditioning purifies the remaining mode.
  const GaussianState tms = apply_beam_splitter(build_input_state(2, std::vector<double>{0.8, -0.8}), 0, 1,
                                                std::numbers::pi / 4, 0.0);
  const double before = symplectic_eigenvalues(reduced_state(tms, {0}).V)[0];
  const GaussianState after = condition_on_heterodyne(tms, {1}, mu);
  REQUIRE(symplectic_eigenvalues(after.V)[0] < before - 1e-6);
  REQUIRE(symplectic_eigenvalues(after.V)[0] >= 0.5 - 1e-9);
  REQUIRE(satisfies_uncertainty(after));

  // Conditioning on nothing is the identity; sequential conditioning commutes.
  const GaussianState s = random_circuit_state(4, {0, 2}, 0.6, rng);
  const GaussianState none = condition_on_heterodyne(s, {}, RVector());
  REQUIRE((none.V - s.V).norm() < 1e-14);
  RVector m3(2), m1(2), both(4);
  m3 << 0.2, 0.1;
  m1 << -0.4, 0.5;
  both << m1, m3;
  const GaussianState ab = condition_on_heterodyne(condition_on_heterodyne(s, {3}, m3), {1}, m1);
  const GaussianState joint = condition_on_heterodyne(s, {1, 3}, both);
  REQUIRE((ab.V - joint.V).norm() < 1e-10);
  REQUIRE((ab.d - joint.d).norm() < 1e-10);
}

TEST_CASE("single-mode photon statistics", "[gaussian]") {
  const double r = 1.0;
  const GaussianState s = build_input_state(1, {0}, r);
  REQUIRE(std::abs(gbs_probability(s, {0}) - 1.0 / std::cosh(r)) < 1e-12);
  REQUIRE(std::abs(gbs_probability(s, {0}) - 0.6480543) < 1e-7);
  REQUIRE(std::abs(gbs_probability(s, {2}) - std::tanh(r) * std::tanh(r) / (2 * std::cosh(r))) < 1e-12);
  REQUIRE(gbs_probability(s, {1}) < 1e-15);
  const auto f = oracles::fock_expansion_gaussian(CMatrix::Identity(1, 1), {0}, r, 8);
  for (int n = 0; n <= 8; ++n) REQUIRE(std::abs(gbs_probability(s, {n}) - f.probability({n})) < 1e-10);
}

TEST_CASE("pure and mixed probability forms agree across engines", "[gaussian][property]") {
  Rng rng(48, {});
  for (int trial = 0; trial < 10; ++trial) {
    GaussianState s = random_circuit_state(3, {0, 1}, 0.5, rng);
    for (int i = 0; i < 6; ++i) s.d(i) = 0.3 * rng.normal();
    const ComplexGaussianView v = complex_view(s);
    for (const auto& m : oracles::enumerate_outcomes_truncated(3, 2)) {
      const double p = gbs_probability(v, m, Engine::treedp);
      REQUIRE(std::abs(p - gbs_probability(v, m, Engine::oracle)) < 1e-12);
      REQUIRE(std::abs(p - gbs_probability_pure(v, m, Engine::treedp)) < 1e-12);
      REQUIRE(std::abs(p - gbs_probability_pure(v, m, Engine::oracle)) < 1e-12);
    }
  }
}

TEST_CASE("displaced states match the Fock oracle", "[gaussian]") {
  Rng rng(49, {});
  const CMatrix U = testing::haar_unitary(2, rng);
  CVector beta(2);
  beta << Complex(0.3, -0.2), Complex(-0.1, 0.25);
  const auto f = oracles::fock_expansion_gaussian(U, {0}, 0.5, 6, beta);
  // Inputs D(beta) S(r) |0> ahead of the circuit.
  GaussianState in = build_input_state(2, {0}, 0.5);
  for (int i = 0; i < 2; ++i) {
    in.d(2 * i) = std::sqrt(2.0) * beta(i).real();
    in.d(2 * i + 1) = std::sqrt(2.0) * beta(i).imag();
  }
  const GaussianState out = apply_passive_unitary(in, U);
  for (const auto& m : oracles::enumerate_outcomes_truncated(2, 3)) {
    REQUIRE(std::abs(gbs_probability(out, m) - f.probability(m)) < 1e-9);
  }
}

TEST_CASE("mixed reduced states match summed outcomes", "[gaussian][property]") {
  Rng rng(50, {});
  const GaussianState s = random_circuit_state(3, {0, 1}, 0.4, rng);
  const GaussianState red = reduced_state(s, {0, 2});
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      double sum = 0.0;
      for (int k = 0; k <= 24; ++k) sum += gbs_probability(s, {a, k, b});
      REQUIRE(std::abs(sum - gbs_probability(red, {a, b})) < 1e-8);
    }
  }
}

TEST_CASE("negative binomial examples", "[gaussian]") {
  const double r = 0.7;
  const double sech = 1.0 / std::cosh(r);
  REQUIRE(std::abs(negative_binomial_pmf(4, r, 0) - std::pow(sech, 4)) < 1e-15);
  REQUIRE(std::abs(negative_binomial_pmf(2, r, 1) - sech * sech * std::tanh(r) * std::tanh(r)) < 1e-15);
  for (int N : {1, 2, 5, 8}) {
    double total = 0.0;
    for (int k = 0; k < 400; ++k) total += negative_binomial_pmf(N, r, k);
    REQUIRE(std::abs(total - 1.0) < 1e-9);
  }
}

TEST_CASE("total photon pairs follow the negative binomial law", "[gaussian]") {
  Rng rng(51, {});
  const double r = 0.5;
  const GaussianState s = random_circuit_state(4, {0, 1}, r, rng);
  for (int k = 0; k <= 3; ++k) {
    double p = 0.0;
    for (const auto& m : oracles::enumerate_outcomes(4, 2 * k)) p += gbs_probability(s, m);
    REQUIRE(std::abs(p - negative_binomial_pmf(2, r, k)) < 1e-10);
    double odd = 0.0;
    for (const auto& m : oracles::enumerate_outcomes(4, 2 * k + 1)) odd += gbs_probability(s, m);
    REQUIRE(odd < 1e-12);
  }
}

TEST_CASE("photon truncation threshold examples", "[gaussian]") {
  REQUIRE(photon_truncation_threshold(0.5, 0.999999) == 2);
  REQUIRE(photon_truncation_threshold(0.0, std::exp(-5.0)) == 10);
  REQUIRE(photon_truncation_threshold(1.0, 1e-6) ==
          static_cast<int>(std::ceil(2.0 / std::pow(std::cosh(1.0), 2) * std::log(1e6))));
  REQUIRE_THROWS_AS(photon_truncation_threshold(0.5, 0.0), InvalidArgument);
  REQUIRE_THROWS_AS(photon_truncation_threshold(0.5, 1.0), InvalidArgument);
}

TEST_CASE("truncated outcomes carry at least 1 - eps of the mass", "[gaussian][property]") {
  Rng rng(52, {});
  const double r = 0.5;
  for (int M = 1; M <= 3; ++M) {
    for (int N = 1; N <= std::min(M, 2); ++N) {
      std::vector<int> sources;
      for (int i = 0; i < N; ++i) sources.push_back(i);
      const GaussianState s = random_circuit_state(M, sources, r, rng);
      for (double eps : {1e-2, 1e-3}) {
        const int m_max = photon_truncation_threshold(r, eps);
        double total = 0.0;
        for (int n = 0; n <= m_max; ++n) {
          for (const auto& m : oracles::enumerate_outcomes(M, n)) total += gbs_probability(s, m);
        }
        INFO("M=" << M << " N=" << N << " eps=" << eps << " m_max=" << m_max);
        REQUIRE(total >= 1.0 - eps);
      }
    }
  }
}

TEST_CASE("fidelity examples", "[gaussian]") {
  const RMatrix vac = 0.5 * RMatrix::Identity(2, 2);
  REQUIRE(std::abs(fidelity_pure(vac, vac) - 1.0) < 1e-14);
  const double s = 0.6;
  const RMatrix sq = build_input_state(1, {0}, s).V;
  REQUIRE(std::abs(fidelity_pure(vac, sq) - 1.0 / std::cosh(s)) < 1e-12);
  RMatrix mixed = RMatrix::Identity(2, 2);
  REQUIRE_THROWS_AS(fidelity_pure(mixed, vac), InvalidArgument);
}

TEST_CASE("infidelity bound holds for small perturbations", "[gaussian][property]") {
  Rng rng(53, {});
  const int N = 2;
  const double r = 0.5;
  for (int trial = 0; trial < 200; ++trial) {
    const GaussianState s = random_circuit_state(2, {0, 1}, r, rng);
    RMatrix X(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) X(i, j) = X(j, i) = rng.normal();
    }
    X *= (0.05 * rng.uniform()) / X.norm();
    const double f = fidelity_pure(s.V, s.V + X);
    REQUIRE(1.0 - f <= infidelity_bound(X, N, r) + 1e-12);
  }
}
