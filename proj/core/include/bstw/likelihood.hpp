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

#ifndef BSTW_LIKELIHOOD_HPP
#define BSTW_LIKELIHOOD_HPP

#include <memory>
#include <vector>

#include "bstw/approx.hpp"
#include "bstw/gaussian.hpp"
#include "bstw/types.hpp"

namespace bstw {

/// Ideal-model probability of the photon counts seen on a subset of modes.
class ProbabilityModel {
 public:
  virtual ~ProbabilityModel() = default;
  virtual int modes() const = 0;
  /// P(m restricted to `marginal_modes`); m spans all modes.
  virtual double probability(const WeightVector& m, const std::vector<int>& marginal_modes) const = 0;
};

/// Gaussian model; marginals come from the reduced state.
class GbsModel : public ProbabilityModel {
 public:
  explicit GbsModel(GaussianState state, Engine engine = Engine::treedp);
  int modes() const override { return state_.modes(); }
  double probability(const WeightVector& m, const std::vector<int>& marginal_modes) const override;

 private:
  GaussianState state_;
  Engine engine_;
};

/// Single-photon model; marginals sum |Per|^2 / m! over the unobserved modes.
class SpbsModel : public ProbabilityModel {
 public:
  SpbsModel(CMatrix U, std::vector<int> sources, Engine engine = Engine::oracle);
  int modes() const override { return static_cast<int>(U_.rows()); }
  double probability(const WeightVector& m, const std::vector<int>& marginal_modes) const override;

 private:
  CMatrix U_;
  std::vector<int> sources_;
  WeightVector cols_;
  Engine engine_;
};

struct LikelihoodOptions {
  /// Empty selects every mode.
  std::vector<int> marginal_modes;
  /// Lower clamp for probabilities; zero keeps zero probabilities an error.
  double floor = 0.0;
  /// Allows unequal counts by comparing mean log-probabilities.
  bool per_sample = false;
};

struct LikelihoodReport {
  double ratio = 0.0;
  std::vector<double> log_p_a;
  std::vector<double> log_p_b;
  /// Partial sums of log P(a_i) - log P(b_i) over the paired prefix.
  std::vector<double> running;
  int n_samples = 0;
  std::vector<int> marginal_modes;
};

/// Sum over i of log P(a_i) - log P(b_i) on the selected marginal.
LikelihoodReport log_likelihood_ratio(const std::vector<WeightVector>& samples_a,
                                      const std::vector<WeightVector>& samples_b, const ProbabilityModel& model,
                                      const LikelihoodOptions& options = {});

struct Compensation {
  double r = 0.0;
  /// Thermal occupation added to every source.
  double thermal = 0.0;
  double mean_photons = 0.0;
};

/// Mean photon number with squeezed-thermal sources sent through U_bar.
double mean_photon_number(const CMatrix& U_bar, const std::vector<int>& sources, double r, double thermal = 0.0);

/// Squeezing (and, past r_max, thermal photons) matching the target mean photon number.
Compensation compensate_photon_number(const CMatrix& U_bar, const std::vector<int>& sources, double target,
                                      double r_max = 3.0);
Compensation compensate_photon_number(const ApproxCircuit& circuit, const std::vector<int>& sources,
                                      double target, double r_max = 3.0);

/// Squeezed-thermal input state on `modes` modes.
GaussianState compensated_input(int modes, const std::vector<int>& sources, const Compensation& c);

}  // namespace bstw

#endif  // BSTW_LIKELIHOOD_HPP
