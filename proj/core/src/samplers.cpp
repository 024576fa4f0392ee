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

#include "bstw/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "bstw/errors.hpp"
#include "bstw/hafnian.hpp"
#include "bstw/oracles.hpp"
#include "bstw/rng.hpp"

namespace bstw {

namespace {

constexpr double kPurityTol = 1e-6;

void check_sources(int modes, const std::vector<int>& sources) {
  std::vector<char> seen(modes, 0);
  for (int s : sources) {
    if (s < 0 || s >= modes || seen[s]++) throw InvalidArgument("source " + std::to_string(s) + " invalid or repeated");
  }
}

double pure_squeezing(const RMatrix& V) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(V);
  const double top = es.eigenvalues().maxCoeff();
  return top > 0.5 ? 0.5 * std::log(2.0 * top) : 0.0;
}

}  // namespace

std::vector<int> OutcomeRecord::modes() const {
  std::vector<int> r;
  for (std::size_t j = 0; j < m.size(); ++j) r.insert(r.end(), m[j], static_cast<int>(j));
  return r;
}

double Pmf::total() const {
  double s = out_mass;
  for (double v : p) s += v;
  return s;
}

double Pmf::at(const WeightVector& m) const {
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i] == m) return p[i];
  }
  return 0.0;
}

void require_unitary(const CMatrix& U, double tol) {
  if (U.rows() != U.cols()) throw InvalidArgument("unitary must be square");
  const double dev = (U.adjoint() * U - CMatrix::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff();
  if (!(dev <= tol)) throw InvalidArgument("matrix is not unitary (deviation " + std::to_string(dev) + ")");
}

WeightVector source_weights(int modes, const std::vector<int>& sources) {
  check_sources(modes, sources);
  WeightVector w(modes, 0);
  for (int s : sources) w[s] = 1;
  return w;
}

Pmf spbs_exact_distribution(const CMatrix& U, const std::vector<int>& sources, Engine engine) {
  require_unitary(U);
  const int M = static_cast<int>(U.rows());
  const int N = static_cast<int>(sources.size());
  if (M > kSpbsOracleMaxModes || N > kSpbsOracleMaxPhotons) {
    throw CapExceeded("exact SPBS distribution limited to M <= " + std::to_string(kSpbsOracleMaxModes) +
                      ", N <= " + std::to_string(kSpbsOracleMaxPhotons));
  }
  const WeightVector cols = source_weights(M, sources);
  Pmf pmf;
  pmf.outcomes = enumerate_outcomes(M, N);
  pmf.p.reserve(pmf.outcomes.size());
  for (const auto& m : pmf.outcomes) {
    pmf.p.push_back(std::norm(permanent(U, m, cols, engine, std::max(1, N))) / factorial_product(m));
  }
  return pmf;
}

std::vector<double> spbs_conditional_weights(const CMatrix& U, const WeightVector& prefix, const WeightVector& cols,
                                             const SamplerConfig& config, bool* capped) {
  const int M = static_cast<int>(U.rows());
  std::vector<double> w(M, 0.0);
  WeightVector n = prefix;
  for (int x = 0; x < M; ++x) {
    if (n[x] + 1 > config.collision_cap) {
      if (capped) *capped = true;
      continue;
    }
    ++n[x];
    w[x] = std::norm(permanent(U, n, cols, config.engine, config.collision_cap, config.zero_tol, config.strategy));
    --n[x];
  }
  return w;
}

OutcomeRecord spbs_sample(const CMatrix& U, const std::vector<int>& sources, const SamplerConfig& config,
                          std::uint64_t index) {
  require_unitary(U);
  const int M = static_cast<int>(U.rows());
  check_sources(M, sources);
  Rng rng(config.seed, {kSpbsStream, index});
  const std::vector<int> alpha = uniform_permutation(sources, rng);
  OutcomeRecord rec;
  rec.seed = config.seed;
  rec.index = index;
  rec.m.assign(M, 0);
  WeightVector cols(M, 0);
  for (int a : alpha) {
    cols[a] = 1;
    bool capped = false;
    const auto w = spbs_conditional_weights(U, rec.m, cols, config, &capped);
    const int x = choose_index(w, rng.uniform());
    if (x < 0 && capped) throw CapExceeded("every admissible output exceeds the collision cap");
    if (x < 0) throw NumericalError("all conditional weights vanish; U is numerically broken");
    rec.overload = rec.overload || capped;
    ++rec.m[x];
  }
  return rec;
}

GaussianState squeezed_circuit_state(const CMatrix& U, const std::vector<int>& sources, double r) {
  require_unitary(U);
  return apply_passive_unitary(build_input_state(static_cast<int>(U.rows()), sources, r), U);
}

Pmf gbs_exact_distribution(const CMatrix& U, const std::vector<int>& sources, double r, int m_max, Engine engine) {
  return gbs_exact_distribution(squeezed_circuit_state(U, sources, r), m_max, engine);
}

Pmf gbs_exact_distribution(const GaussianState& state, int m_max, Engine engine) {
  const int M = state.modes();
  if (m_max < 0) throw InvalidArgument("m_max must be nonnegative");
  if (M > kGbsOracleMaxModes || m_max > kGbsOracleMaxCutoff) {
    throw CapExceeded("exact GBS distribution limited to M <= " + std::to_string(kGbsOracleMaxModes) +
                      ", m_max <= " + std::to_string(kGbsOracleMaxCutoff));
  }
  const ComplexGaussianView view = complex_view(state);
  Pmf pmf;
  pmf.outcomes = enumerate_outcomes_truncated(M, m_max);
  pmf.p.reserve(pmf.outcomes.size());
  for (const auto& m : pmf.outcomes) pmf.p.push_back(std::max(0.0, gbs_probability(view, m, engine)));
  return pmf;
}

GbsSampler::GbsSampler(GaussianState pure, const SamplerConfig& config, RMatrix noise)
    : state_(std::move(pure)), config_(config), noise_(std::move(noise)) {
  const int M = state_.modes();
  if (state_.V.rows() != 2 * M || state_.V.cols() != 2 * M || state_.d.size() != 2 * M) {
    throw InvalidArgument("Gaussian state has inconsistent dimensions");
  }
  const double pure_det = std::pow(4.0, -M);
  if (std::abs(state_.V.determinant() - pure_det) > kPurityTol * pure_det) {
    throw InvalidArgument("GBS sampler needs a pure state; pass mixing through the noise matrix");
  }
  if (noise_.size() != 0) {
    if (noise_.rows() != 2 * M || noise_.cols() != 2 * M) throw InvalidArgument("noise matrix must be 2M x 2M");
    Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (noise_ + noise_.transpose()));
    if (es.eigenvalues().minCoeff() < -1e-12) throw InvalidArgument("noise matrix must be positive semidefinite");
    noise_factor_ = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  }
  if (config_.m_max >= 0) {
    if (config_.m_max < 2) throw InvalidArgument("m_max must be at least 2");
    m_max_ = config_.m_max;
  } else {
    m_max_ = photon_truncation_threshold(pure_squeezing(state_.V), config_.truncation_epsilon);
  }
  if (config_.overload_window < 0) throw InvalidArgument("overload window must be nonnegative");
}

std::vector<double> GbsSampler::step_weights(const GaussianState& conditional, const WeightVector& prefix,
                                             int k) const {
  const ComplexGaussianView view = complex_view(conditional);
  WeightVector m(prefix.begin(), prefix.begin() + k + 1);
  m[k] = 0;
  const int cap = m_max_ + config_.overload_window;
  const auto prof = loop_hafnian_profile(view.B(), view.gamma_b(), m, k, cap, config_.engine, config_.zero_tol,
                                         config_.strategy);
  std::vector<double> w(cap + 1);
  double yfact = 1.0;
  for (int y = 0; y <= cap; ++y) {
    if (y > 0) yfact *= y;
    w[y] = std::norm(prof[y]) / yfact;
  }
  return w;
}

OutcomeRecord GbsSampler::sample(std::uint64_t index) const {
  const int M = state_.modes();
  Rng rng(config_.seed, {kGbsStream, index});
  GaussianState s = state_;
  if (noise_factor_.size() != 0) {
    RVector z(2 * M);
    for (int i = 0; i < 2 * M; ++i) z(i) = rng.normal();
    s.d += noise_factor_ * z;
  }
  const RMatrix het = s.V + 0.5 * RMatrix::Identity(2 * M, 2 * M);
  Eigen::LLT<RMatrix> llt(het);
  if (llt.info() != Eigen::Success) throw NumericalError("heterodyne covariance is not positive definite");
  RVector z(2 * M);
  for (int i = 0; i < 2 * M; ++i) z(i) = rng.normal();
  const RVector alpha = s.d + llt.matrixL() * z;

  OutcomeRecord rec;
  rec.seed = config_.seed;
  rec.index = index;
  rec.m.assign(M, 0);
  for (int k = 0; k < M; ++k) {
    std::vector<int> measured;
    for (int j = k + 1; j < M; ++j) measured.push_back(j);
    const RVector mu = alpha.tail(2 * (M - k - 1));
    const GaussianState cond = condition_on_heterodyne(s, measured, mu);
    const auto w = step_weights(cond, rec.m, k);
    double all = 0.0, tail = 0.0;
    for (int y = 0; y < static_cast<int>(w.size()); ++y) {
      all += w[y];
      if (y > m_max_) tail += w[y];
    }
    int y = choose_index(w, rng.uniform());
    if (y < 0) throw NumericalError("conditional photon-number weights vanish");
    rec.retained_mass *= 1.0 - tail / all;
    if (y > m_max_) {
      rec.overload = true;
      y = m_max_;
    }
    rec.m[k] = y;
  }
  return rec;
}

OutcomeRecord gbs_sample(const CMatrix& U, const std::vector<int>& sources, double r, const SamplerConfig& config,
                         std::uint64_t index) {
  return GbsSampler(squeezed_circuit_state(U, sources, r), config).sample(index);
}

std::vector<OutcomeRecord> sample_batch(const std::function<OutcomeRecord(std::uint64_t)>& draw, std::uint64_t n,
                                        int threads) {
  std::vector<OutcomeRecord> out(n);
  const int t = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::uint64_t>(n, 1024))));
  if (t == 1) {
    for (std::uint64_t i = 0; i < n; ++i) out[i] = draw(i);
    return out;
  }
  std::exception_ptr error;
  std::mutex lock;
  std::vector<std::thread> pool;
  for (int w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < n; i += t) out[i] = draw(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(lock);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

double empirical_tvd(const std::vector<OutcomeRecord>& samples, const Pmf& pmf) {
  if (samples.empty()) throw InvalidArgument("empirical TVD needs at least one sample");
  std::map<WeightVector, double> freq;
  double out = 0.0;
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (const auto& s : samples) {
    if (s.flag == SampleFlag::out) {
      out += inv;
    } else {
      freq[s.m] += inv;
    }
  }
  double sum = std::abs(out - pmf.out_mass);
  for (std::size_t i = 0; i < pmf.outcomes.size(); ++i) {
    auto it = freq.find(pmf.outcomes[i]);
    const double f = it == freq.end() ? 0.0 : it->second;
    sum += std::abs(f - pmf.p[i]);
    if (it != freq.end()) freq.erase(it);
  }
  for (const auto& [m, f] : freq) sum += f;
  return 0.5 * sum;
}

double pmf_tvd(const Pmf& a, const Pmf& b) {
  std::map<WeightVector, double> diff;
  for (std::size_t i = 0; i < a.outcomes.size(); ++i) diff[a.outcomes[i]] += a.p[i];
  for (std::size_t i = 0; i < b.outcomes.size(); ++i) diff[b.outcomes[i]] -= b.p[i];
  double sum = std::abs(a.out_mass - b.out_mass);
  for (const auto& [m, d] : diff) sum += std::abs(d);
  return 0.5 * sum;
}

std::vector<int> uniform_permutation(std::vector<int> v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
    std::swap(v[i - 1], v[std::min(j, i - 1)]);
  }
  return v;
}

int choose_index(const std::vector<double>& weights, double u) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0) || !std::isfinite(total)) return -1;
  const double target = u * total;
  double acc = 0.0;
  int last = -1;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last = static_cast<int>(i);
    if (acc > target) return last;
  }
  return last;
}

}  // namespace bstw
