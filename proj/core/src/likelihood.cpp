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

#include "bstw/likelihood.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "bstw/errors.hpp"
#include "bstw/oracles.hpp"
#include "bstw/permanent.hpp"

namespace bstw {

namespace {

constexpr double kCompensationTol = 1e-6;

std::vector<int> all_modes(int M) {
  std::vector<int> v(M);
  for (int i = 0; i < M; ++i) v[i] = i;
  return v;
}

void check_marginal(int M, const std::vector<int>& modes) {
  std::vector<char> seen(M, 0);
  for (int k : modes) {
    if (k < 0 || k >= M || seen[k]++) throw InvalidArgument("marginal mode " + std::to_string(k) + " invalid");
  }
}

double log_probability(const ProbabilityModel& model, const WeightVector& m, const std::vector<int>& modes,
                       double floor, const char* set, std::size_t index) {
  if (static_cast<int>(m.size()) != model.modes()) {
    throw InvalidArgument(std::string("sample ") + set + "[" + std::to_string(index) + "] has the wrong mode count");
  }
  double p = model.probability(m, modes);
  if (floor > 0.0) p = std::max(p, floor);
  if (!(p > 0.0)) {
    throw NumericalError(std::string("zero ideal probability for sample ") + set + "[" + std::to_string(index) + "]");
  }
  return std::log(p);
}

}  // namespace

GbsModel::GbsModel(GaussianState state, Engine engine) : state_(std::move(state)), engine_(engine) {}

double GbsModel::probability(const WeightVector& m, const std::vector<int>& marginal_modes) const {
  WeightVector sub;
  for (int k : marginal_modes) sub.push_back(m[k]);
  return gbs_probability(reduced_state(state_, marginal_modes), sub, engine_);
}

SpbsModel::SpbsModel(CMatrix U, std::vector<int> sources, Engine engine)
    : U_(std::move(U)), sources_(std::move(sources)), engine_(engine) {
  if (U_.rows() != U_.cols()) throw InvalidArgument("SPBS model needs a square matrix");
  cols_.assign(U_.rows(), 0);
  for (int s : sources_) {
    if (s < 0 || s >= U_.rows() || cols_[s]++) throw InvalidArgument("invalid source list");
  }
}

double SpbsModel::probability(const WeightVector& m, const std::vector<int>& marginal_modes) const {
  const int M = modes();
  const int N = static_cast<int>(sources_.size());
  std::vector<char> observed(M, 0);
  int seen = 0;
  for (int k : marginal_modes) {
    observed[k] = 1;
    seen += m[k];
  }
  if (seen > N) return 0.0;
  std::vector<int> rest;
  for (int j = 0; j < M; ++j) {
    if (!observed[j]) rest.push_back(j);
  }
  if (rest.empty()) return seen == N ? std::norm(permanent(U_, m, cols_, engine_, std::max(1, N))) / factorial_product(m) : 0.0;
  double p = 0.0;
  WeightVector full(M, 0);
  for (int k : marginal_modes) full[k] = m[k];
  for (const auto& tail : enumerate_outcomes(static_cast<int>(rest.size()), N - seen)) {
    for (std::size_t i = 0; i < rest.size(); ++i) full[rest[i]] = tail[i];
    p += std::norm(permanent(U_, full, cols_, engine_, std::max(1, N))) / factorial_product(full);
  }
  return p;
}

LikelihoodReport log_likelihood_ratio(const std::vector<WeightVector>& samples_a,
                                      const std::vector<WeightVector>& samples_b, const ProbabilityModel& model,
                                      const LikelihoodOptions& options) {
  if (samples_a.empty() || samples_b.empty()) throw InvalidArgument("likelihood ratio needs nonempty sample sets");
  if (samples_a.size() != samples_b.size() && !options.per_sample) {
    throw InvalidArgument("sample counts differ; enable per-sample normalization");
  }
  if (options.floor < 0.0) throw InvalidArgument("probability floor must be nonnegative");
  LikelihoodReport rep;
  rep.marginal_modes = options.marginal_modes.empty() ? all_modes(model.modes()) : options.marginal_modes;
  check_marginal(model.modes(), rep.marginal_modes);
  for (std::size_t i = 0; i < samples_a.size(); ++i) {
    rep.log_p_a.push_back(log_probability(model, samples_a[i], rep.marginal_modes, options.floor, "a", i));
  }
  for (std::size_t i = 0; i < samples_b.size(); ++i) {
    rep.log_p_b.push_back(log_probability(model, samples_b[i], rep.marginal_modes, options.floor, "b", i));
  }
  const std::size_t n = std::min(samples_a.size(), samples_b.size());
  rep.n_samples = static_cast<int>(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += rep.log_p_a[i] - rep.log_p_b[i];
    rep.running.push_back(acc);
  }
  if (samples_a.size() == samples_b.size()) {
    rep.ratio = acc;
  } else {
    double sa = 0.0, sb = 0.0;
    for (double v : rep.log_p_a) sa += v;
    for (double v : rep.log_p_b) sb += v;
    rep.ratio = sa / static_cast<double>(samples_a.size()) - sb / static_cast<double>(samples_b.size());
  }
  return rep;
}

double mean_photon_number(const CMatrix& U_bar, const std::vector<int>& sources, double r, double thermal) {
  if (thermal < 0.0) throw InvalidArgument("thermal occupation must be nonnegative");
  double n = 0.0;
  for (int s : sources) {
    if (s < 0 || s >= U_bar.cols()) throw InvalidArgument("source out of range");
    n += U_bar.col(s).squaredNorm() * ((thermal + 0.5) * std::cosh(2.0 * r) - 0.5);
  }
  return n;
}

Compensation compensate_photon_number(const CMatrix& U_bar, const std::vector<int>& sources, double target,
                                      double r_max) {
  if (!(target >= 0.0) || !(r_max > 0.0)) throw InvalidArgument("target must be >= 0 and r_max > 0");
  double transmit = 0.0;
  for (int s : sources) {
    if (s < 0 || s >= U_bar.cols()) throw InvalidArgument("source out of range");
    transmit += U_bar.col(s).squaredNorm();
  }
  Compensation c;
  if (target == 0.0) return c;
  if (!(transmit > 0.0)) throw NumericalError("target photon number is not reachable: nothing is transmitted");
  const double at_max = mean_photon_number(U_bar, sources, r_max);
  if (at_max < target) {
    c.r = r_max;
    c.thermal = (target / transmit + 0.5) / std::cosh(2.0 * r_max) - 0.5;
  } else {
    auto f = [&](double r) { return mean_photon_number(U_bar, sources, r) - target; };
    std::uintmax_t iters = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, 0.0, r_max, f(0.0), at_max - target,
                                                            boost::math::tools::eps_tolerance<double>(50), iters);
    c.r = 0.5 * (lo + hi);
  }
  c.mean_photons = mean_photon_number(U_bar, sources, c.r, c.thermal);
  if (std::abs(c.mean_photons - target) > kCompensationTol * std::max(1.0, target)) {
    throw NumericalError("photon-number compensation did not converge");
  }
  return c;
}

Compensation compensate_photon_number(const ApproxCircuit& circuit, const std::vector<int>& sources,
                                      double target, double r_max) {
  return compensate_photon_number(circuit.U_bar, sources, target, r_max);
}

GaussianState compensated_input(int modes, const std::vector<int>& sources, const Compensation& c) {
  GaussianState s = build_input_state(modes, sources, c.r);
  for (int src : sources) {
    s.V.block(2 * src, 2 * src, 2, 2) *= 2.0 * c.thermal + 1.0;
  }
  return s;
}

}  // namespace bstw
