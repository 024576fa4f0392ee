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

#ifndef BSTW_APPROX_HPP
#define BSTW_APPROX_HPP

#include <cstdint>
#include <vector>

#include "bstw/gaussian.hpp"
#include "bstw/lattice.hpp"
#include "bstw/samplers.hpp"
#include "bstw/types.hpp"

namespace bstw {

/// How singular values of the truncated matrix are brought below one.
enum class Rescale { divide, clamp };

struct TruncationResult {
  CMatrix U_tilde;
  double dU_norm = 0.0;
  std::vector<int> sources;
  /// Leaked weight per source, in the order of `sources`.
  std::vector<double> leakage;
};

/// Zero U[j, s] for every source s and mode j farther than kappa * L from s.
TruncationResult truncate_unitary(const CMatrix& U, const std::vector<int>& sources, const Lattice& lattice,
                                  double kappa, DistanceMetric metric = DistanceMetric::chebyshev);

struct ApproxCircuit {
  CMatrix U;
  CMatrix U_tilde;
  /// Rescaled truncation, the top-left block of W.
  CMatrix U_bar;
  CMatrix W;
  /// 1 + mu, the divisor applied to the singular values.
  double kappa_scale = 1.0;
  double mu = 0.0;
  double dU_norm = 0.0;
  double dW_norm = 0.0;
  Rescale rescale = Rescale::divide;

  int modes() const { return static_cast<int>(U.rows()); }
};

/// SVD rescaling of U_tilde and its 2M x 2M unitary dilation W.
ApproxCircuit extend_to_unitary(const CMatrix& U, const CMatrix& U_tilde, Rescale rescale = Rescale::divide);

ApproxCircuit approximate_circuit(const CMatrix& U, const std::vector<int>& sources, const Lattice& lattice,
                                  double kappa, Rescale rescale = Rescale::divide,
                                  DistanceMetric metric = DistanceMetric::chebyshev);

/// Right-hand side of ||dW||_F^2 <= 2 (sqrt(M) + 1)^2 (||dU||_F^2 + ||dU||_F).
double dw_squared_bound(int modes, double dU_norm);

/// N / 2 * ||dW||_F.
double spbs_tvd_bound(int photons, double dW_norm);

/// 2 ||dW||_F sqrt(M [N cosh 4r + (M - N)]).
double covariance_distance_bound(int modes, int sources, double r, double dW_norm);

/// (N cosh 4r / 2)^{1/4} ||V_2M - Vbar_2M||_F^{1/2}.
double gbs_tvd_bound(int sources, double r, double covariance_distance);

/// 2M-mode state of U (+) (-U) acting on the squeezed sources and M vacuum modes.
GaussianState extended_exact_state(const CMatrix& U, const std::vector<int>& sources, double r);

/// 2M-mode state of W acting on the same input.
GaussianState extended_approx_state(const ApproxCircuit& circuit, const std::vector<int>& sources, double r);

/// Chain-rule sampler over the first M modes of W; leaked conditional mass returns out.
OutcomeRecord approx_spbs_sample(const ApproxCircuit& circuit, const std::vector<int>& sources,
                                 const SamplerConfig& config, std::uint64_t index);

/// Exact distribution of approx_spbs_sample, with the leaked mass in out_mass.
Pmf approx_spbs_distribution(const ApproxCircuit& circuit, const std::vector<int>& sources,
                             Engine engine = Engine::oracle);

/// GBS on W: vacuum on the virtual modes is decided first, then the conditional
/// state on the first M modes is sampled.
class ApproxGbsSampler {
 public:
  ApproxGbsSampler(const ApproxCircuit& circuit, const std::vector<int>& sources, double r,
                   const SamplerConfig& config);

  OutcomeRecord sample(std::uint64_t index) const;
  /// Probability that some virtual mode holds a photon.
  double out_probability() const { return 1.0 - keep_; }
  const GaussianState& conditional_state() const { return inner_.state(); }
  int m_max() const { return inner_.m_max(); }

 private:
  SamplerConfig config_;
  double keep_;
  GbsSampler inner_;
};

OutcomeRecord approx_gbs_sample(const ApproxCircuit& circuit, const std::vector<int>& sources, double r,
                                const SamplerConfig& config, std::uint64_t index);

/// Truncated distribution of ApproxGbsSampler over the first M modes.
Pmf approx_gbs_distribution(const ApproxCircuit& circuit, const std::vector<int>& sources, double r, int m_max,
                            Engine engine = Engine::oracle);

/// Squared amplitude source s sends beyond `threshold` in lattice distance.
double leakage_rate(const CMatrix& U, int source, const Lattice& lattice, double threshold,
                    DistanceMetric metric = DistanceMetric::chebyshev);

/// min(1, 2 d exp(-l^2 / 2t)).
double leakage_bound(int dim, double l, double t);

}  // namespace bstw

#endif  // BSTW_APPROX_HPP
