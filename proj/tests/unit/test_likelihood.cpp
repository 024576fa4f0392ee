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
#include <bstw/likelihood.hpp>
#include <bstw/oracles.hpp>
#include <bstw/samplers.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "test_support.hpp"

using namespace bstw;

namespace {

struct SpbsFixture {
  CMatrix U;
  std::vector<int> sources{0, 2};
  std::vector<WeightVector> model;
  std::vector<WeightVector> model2;
  std::vector<WeightVector> uniform;

  explicit SpbsFixture(int n) {
    Rng rng(301, {});
    U = testing::haar_unitary(4, rng);
    SamplerConfig cfg;
    cfg.seed = 5;
    for (int i = 0; i < n; ++i) model.push_back(spbs_sample(U, sources, cfg, i).m);
    cfg.seed = 6;
    for (int i = 0; i < n; ++i) model2.push_back(spbs_sample(U, sources, cfg, i).m);
    const auto all = enumerate_outcomes(4, 2);
    Rng pick(302, {});
    for (int i = 0; i < n; ++i) {
      uniform.push_back(all[static_cast<std::size_t>(pick.uniform() * static_cast<double>(all.size()))]);
    }
  }
};

}  // namespace

TEST_CASE("identical sample sets give a zero ratio", "[likelihood]") {
  const SpbsFixture f(50);
  const SpbsModel model(f.U, f.sources);
  const auto rep = log_likelihood_ratio(f.model, f.model, model);
  REQUIRE(rep.ratio == 0.0);
  REQUIRE(rep.n_samples == 50);
  REQUIRE(rep.running.size() == 50);
  REQUIRE(rep.marginal_modes == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("model samples beat uniform samples", "[likelihood]") {
  const SpbsFixture f(1000);
  const SpbsModel model(f.U, f.sources);
  const auto rep = log_likelihood_ratio(f.model, f.uniform, model);
  REQUIRE(rep.ratio > 0.0);
  REQUIRE(rep.running.back() == rep.ratio);
}

TEST_CASE("ratio is antisymmetric and additive", "[likelihood][property]") {
  const SpbsFixture f(200);
  const SpbsModel model(f.U, f.sources);
  const auto ab = log_likelihood_ratio(f.model, f.uniform, model);
  const auto ba = log_likelihood_ratio(f.uniform, f.model, model);
  REQUIRE(ab.ratio == -ba.ratio);
  for (int split : {1, 37, 100, 199}) {
    const std::vector<WeightVector> a1(f.model.begin(), f.model.begin() + split);
    const std::vector<WeightVector> a2(f.model.begin() + split, f.model.end());
    const std::vector<WeightVector> b1(f.uniform.begin(), f.uniform.begin() + split);
    const std::vector<WeightVector> b2(f.uniform.begin() + split, f.uniform.end());
    const double sum = log_likelihood_ratio(a1, b1, model).ratio + log_likelihood_ratio(a2, b2, model).ratio;
    REQUIRE(std::abs(sum - ab.ratio) <= 1e-9 * std::max(1.0, std::abs(ab.ratio)));
  }
}

TEST_CASE("two model sample sets are statistically indistinguishable", "[likelihood]") {
  const SpbsFixture f(1000);
  const SpbsModel model(f.U, f.sources);
  const auto rep = log_likelihood_ratio(f.model, f.model2, model);
  std::vector<double> diff(rep.n_samples);
  for (int i = 0; i < rep.n_samples; ++i) diff[i] = rep.log_p_a[i] - rep.log_p_b[i];
  const double mean = std::accumulate(diff.begin(), diff.end(), 0.0) / rep.n_samples;
  double var = 0.0;
  for (double d : diff) var += (d - mean) * (d - mean);
  var /= rep.n_samples - 1;
  REQUIRE(std::abs(rep.ratio / rep.n_samples) < 3.0 * std::sqrt(var / rep.n_samples));
}

TEST_CASE("SPBS marginals sum the full distribution", "[likelihood]") {
  const SpbsFixture f(1);
  const SpbsModel model(f.U, f.sources);
  const Pmf full = spbs_exact_distribution(f.U, f.sources);
  const std::vector<int> keep{1, 3};
  double total = 0.0;
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; a + b <= 2; ++b) {
      double expect = 0.0;
      for (std::size_t i = 0; i < full.outcomes.size(); ++i) {
        if (full.outcomes[i][1] == a && full.outcomes[i][3] == b) expect += full.p[i];
      }
      const double p = model.probability({0, a, 0, b}, keep);
      REQUIRE(std::abs(p - expect) < 1e-12);
      total += p;
    }
  }
  REQUIRE(std::abs(total - 1.0) < 1e-12);
  REQUIRE(model.probability({0, 3, 0, 0}, keep) == 0.0);
}

TEST_CASE("GBS marginals use the reduced state", "[likelihood]") {
  Rng rng(303, {});
  const CMatrix U = testing::haar_unitary(3, rng);
  const GaussianState s = squeezed_circuit_state(U, {0, 1}, 0.4);
  const GbsModel model(s);
  const Pmf full = gbs_exact_distribution(s, 4);
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      double summed = 0.0;
      for (std::size_t i = 0; i < full.outcomes.size(); ++i) {
        if (full.outcomes[i][0] == a && full.outcomes[i][2] == b) summed += full.p[i];
      }
      const double p = model.probability({a, 0, b}, {0, 2});
      REQUIRE(p >= summed - 1e-12);
      REQUIRE(p - summed < 2e-3);
    }
  }
  const WeightVector m{1, 0, 1};
  REQUIRE(std::abs(model.probability(m, {0, 1, 2}) - gbs_probability(s, m)) < 1e-14);
}

TEST_CASE("zero probabilities are errors unless a floor is set", "[likelihood]") {
  const SpbsFixture f(3);
  const SpbsModel model(f.U, f.sources);
  std::vector<WeightVector> bad = f.model;
  bad[1] = {0, 0, 0, 0};
  try {
    (void)log_likelihood_ratio(f.model, bad, model);
    FAIL("expected an error");
  } catch (const NumericalError& e) {
    REQUIRE(std::string(e.what()).find("b[1]") != std::string::npos);
  }
  LikelihoodOptions opt;
  opt.floor = 1e-300;
  const auto rep = log_likelihood_ratio(f.model, bad, model, opt);
  REQUIRE(rep.log_p_b[1] == std::log(1e-300));
}

TEST_CASE("likelihood input validation", "[likelihood]") {
  const SpbsFixture f(4);
  const SpbsModel model(f.U, f.sources);
  const std::vector<WeightVector> three(f.model.begin(), f.model.begin() + 3);
  REQUIRE_THROWS_AS(log_likelihood_ratio(f.model, three, model), InvalidArgument);
  LikelihoodOptions opt;
  opt.per_sample = true;
  const auto rep = log_likelihood_ratio(f.model, three, model, opt);
  double sa = 0.0, sb = 0.0;
  for (double v : rep.log_p_a) sa += v;
  for (double v : rep.log_p_b) sb += v;
  REQUIRE(std::abs(rep.ratio - (sa / 4 - sb / 3)) < 1e-12);
  REQUIRE(rep.n_samples == 3);
  REQUIRE_THROWS_AS(log_likelihood_ratio({}, {}, model), InvalidArgument);
  LikelihoodOptions dup;
  dup.marginal_modes = {1, 1};
  REQUIRE_THROWS_AS(log_likelihood_ratio(f.model, f.model, model, dup), InvalidArgument);
  dup.marginal_modes = {4};
  REQUIRE_THROWS_AS(log_likelihood_ratio(f.model, f.model, model, dup), InvalidArgument);
  LikelihoodOptions neg;
  neg.floor = -1.0;
  REQUIRE_THROWS_AS(log_likelihood_ratio(f.model, f.model, model, neg), InvalidArgument);
  REQUIRE_THROWS_AS(log_likelihood_ratio({{1, 1, 0}}, {{1, 1, 0}}, model), InvalidArgument);
  REQUIRE_THROWS_AS(SpbsModel(f.U, {0, 0}), InvalidArgument);
}

TEST_CASE("photon-number compensation", "[likelihood][compensation]") {
  const CMatrix I = CMatrix::Identity(3, 3);
  const std::vector<int> sources{0, 2};
  SECTION("no loss leaves the squeezing unchanged") {
    const Compensation c = compensate_photon_number(I, sources, mean_photon_number(I, sources, 0.7));
    REQUIRE(std::abs(c.r - 0.7) < 1e-6);
    REQUIRE(c.thermal == 0.0);
  }
  SECTION("half transmission doubles sinh^2 r") {
    CMatrix T(1, 1);
    T(0, 0) = 1.0 / std::sqrt(2.0);
    const double target = std::pow(std::sinh(0.5), 2);
    const Compensation c = compensate_photon_number(T, {0}, target);
    REQUIRE(std::abs(c.mean_photons - target) < 1e-6);
    REQUIRE(std::abs(0.5 * std::pow(std::sinh(c.r), 2) - target) < 1e-6);
    REQUIRE(std::abs(std::pow(std::sinh(c.r), 2) - 2.0 * target) < 2e-6);
    REQUIRE(c.thermal == 0.0);
  }
  SECTION("thermal photons cover what squeezing cannot") {
    const Compensation c = compensate_photon_number(I, sources, 1.0, 0.1);
    REQUIRE(c.r == 0.1);
    REQUIRE(c.thermal > 0.0);
    REQUIRE(std::abs(c.mean_photons - 1.0) < 1e-6);
    const auto n = mean_photon_numbers(compensated_input(3, sources, c));
    REQUIRE(std::abs(n[0] + n[1] + n[2] - 1.0) < 1e-9);
    REQUIRE(std::abs(n[1]) < 1e-12);
  }
  SECTION("zero target and unreachable targets") {
    REQUIRE(compensate_photon_number(I, sources, 0.0).r == 0.0);
    REQUIRE_THROWS_AS(compensate_photon_number(CMatrix::Zero(3, 3), sources, 1.0), NumericalError);
    REQUIRE_THROWS_AS(compensate_photon_number(I, sources, -1.0), InvalidArgument);
    REQUIRE_THROWS_AS(mean_photon_number(I, sources, 0.1, -0.5), InvalidArgument);
  }
}
