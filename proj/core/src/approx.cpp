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

#include "bstw/approx.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "bstw/errors.hpp"
#include "bstw/oracles.hpp"
#include "bstw/rng.hpp"

namespace bstw {

namespace {

constexpr double kReachSlack = 1e-9;
constexpr double kDilationTol = 1e-10;

void check_lattice_sources(const Lattice& lattice, const CMatrix& U, const std::vector<int>& sources) {
  if (U.rows() != U.cols() || U.rows() != lattice.modes()) throw InvalidArgument("U must be M x M for the lattice");
  for (int s : sources) {
    if (s < 0 || s >= lattice.modes()) throw InvalidArgument("source " + std::to_string(s) + " is off the lattice");
  }
}

std::vector<int> virtual_modes(int M) {
  std::vector<int> v(M);
  for (int i = 0; i < M; ++i) v[i] = M + i;
  return v;
}

GaussianState extended_input(int M, const std::vector<int>& sources, double r) {
  for (int s : sources) {
    if (s < 0 || s >= M) throw InvalidArgument("sources must lie in the first M modes");
  }
  return build_input_state(2 * M, sources, r);
}

GaussianState vacuum_conditioned(const ApproxCircuit& c, const std::vector<int>& sources, double r) {
  const GaussianState big = extended_approx_state(c, sources, r);
  return condition_on_heterodyne(big, virtual_modes(c.modes()), RVector::Zero(2 * c.modes()));
}

double virtual_vacuum_probability(const ApproxCircuit& c, const std::vector<int>& sources, double r) {
  const GaussianState big = extended_approx_state(c, sources, r);
  return complex_view(reduced_state(big, virtual_modes(c.modes()))).prefactor;
}

}  // namespace

TruncationResult truncate_unitary(const CMatrix& U, const std::vector<int>& sources, const Lattice& lattice,
                                  double kappa, DistanceMetric metric) {
  check_lattice_sources(lattice, U, sources);
  if (!(kappa >= 0.0)) throw InvalidArgument("kappa must be nonnegative");
  const double reach = kappa * lattice.cell_edge() + kReachSlack;
  TruncationResult t;
  t.U_tilde = U;
  t.sources = sources;
  double sq = 0.0;
  for (int s : sources) {
    double leak = 0.0;
    for (int j = 0; j < lattice.modes(); ++j) {
      if (lattice.distance(j, s, metric) > reach) {
        leak += std::norm(U(j, s));
        t.U_tilde(j, s) = 0.0;
      }
    }
    t.leakage.push_back(leak);
    sq += leak;
  }
  t.dU_norm = std::sqrt(sq);
  return t;
}

ApproxCircuit extend_to_unitary(const CMatrix& U, const CMatrix& U_tilde, Rescale rescale) {
  if (U.rows() != U.cols() || U_tilde.rows() != U.rows() || U_tilde.cols() != U.cols()) {
    throw InvalidArgument("U and U_tilde must be square and equal in size");
  }
  if (!U_tilde.allFinite()) throw NumericalError("U_tilde has non-finite entries");
  const int M = static_cast<int>(U.rows());
  Eigen::JacobiSVD<CMatrix> svd(U_tilde, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector sigma = svd.singularValues();
  ApproxCircuit c;
  c.U = U;
  c.U_tilde = U_tilde;
  c.rescale = rescale;
  c.mu = std::max(sigma.size() ? sigma(0) - 1.0 : 0.0, 0.0);
  c.kappa_scale = 1.0 + c.mu;
  RVector dbar = rescale == Rescale::divide ? RVector(sigma / c.kappa_scale) : RVector(sigma.cwiseMin(1.0));
  const CMatrix& R = svd.matrixU();
  const CMatrix Vh = svd.matrixV().adjoint();
  c.U_bar = rescale == Rescale::divide ? CMatrix(U_tilde / c.kappa_scale)
                                       : CMatrix(R * dbar.cast<Complex>().asDiagonal() * Vh);
  const RVector comp = (RVector::Ones(M) - dbar.cwiseAbs2()).cwiseMax(0.0).cwiseSqrt();
  const CMatrix off = R * comp.cast<Complex>().asDiagonal() * Vh;
  c.W.resize(2 * M, 2 * M);
  c.W << c.U_bar, off, off, -c.U_bar;
  const double dev = (c.W.adjoint() * c.W - CMatrix::Identity(2 * M, 2 * M)).cwiseAbs().maxCoeff();
  if (!(dev <= kDilationTol)) throw NumericalError("dilation W is not unitary (deviation " + std::to_string(dev) + ")");
  CMatrix U2 = CMatrix::Zero(2 * M, 2 * M);
  U2.topLeftCorner(M, M) = U;
  U2.bottomRightCorner(M, M) = -U;
  c.dU_norm = (U - U_tilde).norm();
  c.dW_norm = (c.W - U2).norm();
  return c;
}

ApproxCircuit approximate_circuit(const CMatrix& U, const std::vector<int>& sources, const Lattice& lattice,
                                  double kappa, Rescale rescale, DistanceMetric metric) {
  return extend_to_unitary(U, truncate_unitary(U, sources, lattice, kappa, metric).U_tilde, rescale);
}

double dw_squared_bound(int modes, double dU_norm) {
  const double a = std::sqrt(static_cast<double>(modes)) + 1.0;
  return 2.0 * a * a * (dU_norm * dU_norm + dU_norm);
}

double spbs_tvd_bound(int photons, double dW_norm) { return 0.5 * photons * dW_norm; }

double covariance_distance_bound(int modes, int sources, double r, double dW_norm) {
  return 2.0 * dW_norm * std::sqrt(modes * (sources * std::cosh(4.0 * r) + (modes - sources)));
}

double gbs_tvd_bound(int sources, double r, double covariance_distance) {
  return std::pow(sources * std::cosh(4.0 * r) / 2.0, 0.25) * std::sqrt(covariance_distance);
}

GaussianState extended_exact_state(const CMatrix& U, const std::vector<int>& sources, double r) {
  const int M = static_cast<int>(U.rows());
  CMatrix U2 = CMatrix::Zero(2 * M, 2 * M);
  U2.topLeftCorner(M, M) = U;
  U2.bottomRightCorner(M, M) = -U;
  return apply_passive_unitary(extended_input(M, sources, r), U2);
}

GaussianState extended_approx_state(const ApproxCircuit& circuit, const std::vector<int>& sources, double r) {
  return apply_passive_unitary(extended_input(circuit.modes(), sources, r), circuit.W);
}

OutcomeRecord approx_spbs_sample(const ApproxCircuit& circuit, const std::vector<int>& sources,
                                 const SamplerConfig& config, std::uint64_t index) {
  const int M = circuit.modes();
  const CMatrix& Ub = circuit.U_bar;
  source_weights(M, sources);
  Rng rng(config.seed, {kSpbsStream, index});
  const std::vector<int> alpha = uniform_permutation(sources, rng);
  OutcomeRecord rec;
  rec.seed = config.seed;
  rec.index = index;
  rec.m.assign(M, 0);
  WeightVector cols(M, 0);
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    cols[alpha[k]] = 1;
    bool capped = false;
    const auto w = spbs_conditional_weights(Ub, rec.m, cols, config, &capped);
    rec.overload = rec.overload || capped;
    double z = 1.0;
    if (k > 0) {
      z = 0.0;
      for (std::size_t j = 0; j <= k; ++j) {
        cols[alpha[j]] = 0;
        z += std::norm(permanent(Ub, rec.m, cols, config.engine, config.collision_cap, config.zero_tol,
                                 config.strategy));
        cols[alpha[j]] = 1;
      }
    }
    double kept = 0.0;
    for (double v : w) kept += v;
    const double u = rng.uniform();
    if (!(u * z < kept)) {
      rec.flag = SampleFlag::out;
      rec.m.clear();
      return rec;
    }
    const int x = choose_index(w, u * z / kept);
    if (x < 0) throw NumericalError("all conditional weights vanish");
    ++rec.m[x];
  }
  return rec;
}

Pmf approx_spbs_distribution(const ApproxCircuit& circuit, const std::vector<int>& sources, Engine engine) {
  const int M = circuit.modes();
  const int N = static_cast<int>(sources.size());
  if (M > kSpbsOracleMaxModes || N > kSpbsOracleMaxPhotons) {
    throw CapExceeded("approximate SPBS distribution limited to M <= " + std::to_string(kSpbsOracleMaxModes) +
                      ", N <= " + std::to_string(kSpbsOracleMaxPhotons));
  }
  const WeightVector cols = source_weights(M, sources);
  Pmf pmf;
  pmf.outcomes = enumerate_outcomes(M, N);
  double kept = 0.0;
  for (const auto& m : pmf.outcomes) {
    const double p = std::norm(permanent(circuit.U_bar, m, cols, engine, std::max(1, N))) / factorial_product(m);
    pmf.p.push_back(p);
    kept += p;
  }
  pmf.out_mass = std::max(0.0, 1.0 - kept);
  return pmf;
}

ApproxGbsSampler::ApproxGbsSampler(const ApproxCircuit& circuit, const std::vector<int>& sources, double r,
                                   const SamplerConfig& config)
    : config_(config),
      keep_(virtual_vacuum_probability(circuit, sources, r)),
      inner_(vacuum_conditioned(circuit, sources, r), config) {}

OutcomeRecord ApproxGbsSampler::sample(std::uint64_t index) const {
  Rng rng(config_.seed, {kGbsOutStream, index});
  if (!(rng.uniform() < keep_)) {
    OutcomeRecord rec;
    rec.flag = SampleFlag::out;
    rec.seed = config_.seed;
    rec.index = index;
    return rec;
  }
  return inner_.sample(index);
}

OutcomeRecord approx_gbs_sample(const ApproxCircuit& circuit, const std::vector<int>& sources, double r,
                                const SamplerConfig& config, std::uint64_t index) {
  return ApproxGbsSampler(circuit, sources, r, config).sample(index);
}

Pmf approx_gbs_distribution(const ApproxCircuit& circuit, const std::vector<int>& sources, double r, int m_max,
                            Engine engine) {
  const double keep = virtual_vacuum_probability(circuit, sources, r);
  Pmf pmf = gbs_exact_distribution(vacuum_conditioned(circuit, sources, r), m_max, engine);
  for (double& p : pmf.p) p *= keep;
  pmf.out_mass = 1.0 - keep;
  return pmf;
}

double leakage_rate(const CMatrix& U, int source, const Lattice& lattice, double threshold, DistanceMetric metric) {
  if (source < 0 || source >= lattice.modes() || U.rows() != lattice.modes()) {
    throw InvalidArgument("source or matrix does not fit the lattice");
  }
  double eta = 0.0;
  for (int j = 0; j < lattice.modes(); ++j) {
    if (lattice.distance(j, source, metric) > threshold + kReachSlack) eta += std::norm(U(j, source));
  }
  return eta;
}

double leakage_bound(int dim, double l, double t) {
  if (dim < 1 || !(t > 0.0)) throw InvalidArgument("leakage bound needs d >= 1 and t > 0");
  return std::min(1.0, 2.0 * dim * std::exp(-l * l / (2.0 * t)));
}

}  // namespace bstw
