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

#ifndef BSTW_SAMPLERS_HPP
#define BSTW_SAMPLERS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "bstw/gaussian.hpp"
#include "bstw/graph.hpp"
#include "bstw/permanent.hpp"
#include "bstw/rng.hpp"
#include "bstw/types.hpp"

namespace bstw {

inline constexpr int kSpbsOracleMaxModes = 8;
inline constexpr int kSpbsOracleMaxPhotons = 4;
inline constexpr int kGbsOracleMaxModes = 4;
inline constexpr int kGbsOracleMaxCutoff = 4;
inline constexpr double kUnitarityTol = 1e-8;

/// Stream tags mixed into every per-sample RNG key.
inline constexpr std::uint64_t kSpbsStream = 0x5350;
inline constexpr std::uint64_t kGbsStream = 0x4742;
inline constexpr std::uint64_t kGbsOutStream = 0x474f;

enum class SampleFlag { ok, out };

struct OutcomeRecord {
  /// Occupation numbers over the output modes; empty when flag is out.
  WeightVector m;
  SampleFlag flag = SampleFlag::ok;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  /// Set when a draw hit the collision cap or the photon cutoff.
  bool overload = false;
  /// Product over chain steps of the probability kept inside the enumerated support.
  double retained_mass = 1.0;

  /// Sorted mode list r with each mode repeated m_j times.
  std::vector<int> modes() const;
};

struct SamplerConfig {
  Engine engine = Engine::treedp;
  Strategy strategy = MinFill{};
  std::uint64_t seed = 0;
  /// Per-mode photon cutoff for GBS; negative selects photon_truncation_threshold.
  int m_max = -1;
  double truncation_epsilon = 1e-6;
  /// Largest multiplicity any permanent or hafnian is asked to handle.
  int collision_cap = kDefaultCollisionCap;
  /// Photon numbers above m_max probed to measure the truncated tail.
  int overload_window = 2;
  double zero_tol = 0.0;
};

/// Probability table over outcomes, with an explicit "out" bin.
struct Pmf {
  std::vector<WeightVector> outcomes;
  std::vector<double> p;
  double out_mass = 0.0;

  double total() const;
  /// Probability of m, zero when absent.
  double at(const WeightVector& m) const;
};

/// Fails with InvalidArgument when U deviates from unitary by more than tol (max entry).
void require_unitary(const CMatrix& U, double tol = kUnitarityTol);

/// Source indicator vector of length M.
WeightVector source_weights(int modes, const std::vector<int>& sources);

/// Exact single-photon distribution |Per(U[m; S])|^2 / m! over all outcomes.
Pmf spbs_exact_distribution(const CMatrix& U, const std::vector<int>& sources, Engine engine = Engine::oracle);

/// One chain-rule sample; stream keyed by (config.seed, index).
OutcomeRecord spbs_sample(const CMatrix& U, const std::vector<int>& sources, const SamplerConfig& config,
                          std::uint64_t index);

/// Conditional weights |Per(U[r + x; alpha_1..k])|^2 for every candidate x.
std::vector<double> spbs_conditional_weights(const CMatrix& U, const WeightVector& prefix, const WeightVector& cols,
                                             const SamplerConfig& config, bool* capped = nullptr);

/// Exact truncated GBS distribution over {m : m_i <= m_max}.
Pmf gbs_exact_distribution(const CMatrix& U, const std::vector<int>& sources, double r, int m_max,
                           Engine engine = Engine::oracle);
Pmf gbs_exact_distribution(const GaussianState& state, int m_max, Engine engine = Engine::oracle);

/// Heterodyne chain-rule sampler for a pure Gaussian state, optionally with
/// classical noise W (output covariance V + W).
class GbsSampler {
 public:
  GbsSampler(GaussianState pure, const SamplerConfig& config, RMatrix noise = RMatrix());

  OutcomeRecord sample(std::uint64_t index) const;
  /// Pmf used at chain step k, for inspection and engine cross-checks.
  std::vector<double> step_weights(const GaussianState& conditional, const WeightVector& prefix, int k) const;
  int m_max() const { return m_max_; }
  const GaussianState& state() const { return state_; }

 private:
  GaussianState state_;
  SamplerConfig config_;
  RMatrix noise_;
  RMatrix noise_factor_;
  int m_max_;
};

GaussianState squeezed_circuit_state(const CMatrix& U, const std::vector<int>& sources, double r);

OutcomeRecord gbs_sample(const CMatrix& U, const std::vector<int>& sources, double r, const SamplerConfig& config,
                         std::uint64_t index);

/// Draw indices [0, n) with `threads` workers; output order is by index.
std::vector<OutcomeRecord> sample_batch(const std::function<OutcomeRecord(std::uint64_t)>& draw, std::uint64_t n,
                                        int threads = 1);

/// Half the L1 distance between the empirical frequencies and the pmf, counting
/// out samples against pmf.out_mass and absent outcomes at full weight.
double empirical_tvd(const std::vector<OutcomeRecord>& samples, const Pmf& pmf);

/// Half the L1 distance between two pmfs, including the out bins.
double pmf_tvd(const Pmf& a, const Pmf& b);

/// Fisher-Yates shuffle driven by rng.uniform().
std::vector<int> uniform_permutation(std::vector<int> v, Rng& rng);

/// Index of the first cumulative weight exceeding u * sum; -1 when all zero.
int choose_index(const std::vector<double>& weights, double u);

}  // namespace bstw

#endif  // BSTW_SAMPLERS_HPP
