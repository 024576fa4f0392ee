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

#ifndef BSTW_CIRCUITS_HPP
#define BSTW_CIRCUITS_HPP

#include <cstdint>
#include <vector>

#include "bstw/lattice.hpp"
#include "bstw/types.hpp"

namespace bstw {

struct CircuitSpec {
  int dim = 1;
  int modes = 0;
  int sources = 1;
  /// Number of rounds; each round has 2 * dim steps.
  int depth = 0;
  std::uint64_t seed = 0;
  /// Exponent in M = k N^gamma.
  double gamma = 2.0;

  /// Prefactor k = M / N^gamma.
  double k() const;
};

struct BeamSplitterGate {
  int round = 0;
  int step = 0;
  int i = 0;
  int j = 0;
  double theta = 0.0;
  double phi0 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;

  /// 2x2 block acting on rows (i, j).
  Eigen::Matrix2cd matrix() const;
};

struct Circuit {
  CircuitSpec spec;
  Lattice lattice;
  std::vector<BeamSplitterGate> gates;
  CMatrix U;
};

/// Mode pairs of one step: axis = step / 2, parity = step % 2, open boundaries.
std::vector<std::pair<int, int>> step_pairs(const Lattice& lattice, int step);

Circuit build_local_haar_circuit(const CircuitSpec& spec);

/// Product of the gates applied in list order to the identity.
CMatrix circuit_unitary(int modes, const std::vector<BeamSplitterGate>& gates);

/// Applies one gate to the rows of U in place.
void apply_gate(CMatrix& U, const BeamSplitterGate& gate);

/// Seed of the c-th circuit of an ensemble derived from `seed`.
std::uint64_t ensemble_seed(std::uint64_t seed, std::uint64_t c);

/// E|U_{j,s}|^2 after each round, obtained by averaging every gate's pair.
std::vector<std::vector<double>> expected_mass_profile(const Lattice& lattice, int source, int rounds);

struct DiffusionReport {
  int n_circuits = 0;
  int source = 0;
  double distance = 0.0;
  /// Entry t holds statistics after t + 1 rounds.
  std::vector<std::vector<double>> mean_profile;
  std::vector<double> displacement_variance;
  std::vector<double> mean_leakage;
  /// leakage_bound(d, l, 2 * rounds) per depth.
  std::vector<double> leakage_bound;
  /// Largest |z| of the per-gate averaging identity.
  double max_identity_z = 0.0;
  int identity_checks = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ensemble statistics of the source column over `spec.depth` rounds.
DiffusionReport diffusion_check(const CircuitSpec& spec, int source, int n_circuits, double distance,
                                DistanceMetric metric = DistanceMetric::chebyshev);

enum class DepthVariant { standard, log1d };

/// Depth below which photons stay near their sublattice with high probability.
double easy_depth(int dim, double k, double gamma, int sources, double epsilon,
                  DepthVariant variant = DepthVariant::standard, double kappa = 0.5);
double easy_depth(const CircuitSpec& spec, double epsilon, DepthVariant variant = DepthVariant::standard,
                  double kappa = 0.5);

/// Width scale N^{alpha/d + (d-1)/d} for propagation exponent alpha.
double width_forecast(int dim, int sources, double alpha);

}  // namespace bstw

#endif  // BSTW_CIRCUITS_HPP
