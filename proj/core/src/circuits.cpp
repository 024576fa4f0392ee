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

#include "bstw/circuits.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bstw/approx.hpp"
#include "bstw/errors.hpp"
#include "bstw/rng.hpp"

namespace bstw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kEnsembleStream = 0x454e;

void check_spec(const CircuitSpec& spec) {
  if (spec.depth < 0) throw InvalidArgument("depth must be nonnegative");
}

double squared_displacement(const Lattice& lattice, int a, int b) {
  const auto ca = lattice.coords(a);
  const auto cb = lattice.coords(b);
  double s = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) s += static_cast<double>((ca[i] - cb[i]) * (ca[i] - cb[i]));
  return s;
}

}  // namespace

double CircuitSpec::k() const { return modes / std::pow(static_cast<double>(sources), gamma); }

Eigen::Matrix2cd BeamSplitterGate::matrix() const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex e1 = std::polar(1.0, phi1);
  const Complex e2 = std::polar(1.0, phi2);
  const Complex e0 = std::polar(1.0, phi0);
  Eigen::Matrix2cd g;
  g << e1 * c, e1 * e0 * s, -e2 * std::conj(e0) * s, e2 * c;
  return g;
}

std::vector<std::pair<int, int>> step_pairs(const Lattice& lattice, int step) {
  if (step < 0 || step >= 2 * lattice.dim()) throw InvalidArgument("step out of range");
  const int axis = step / 2;
  const int parity = step % 2;
  std::vector<std::pair<int, int>> pairs;
  for (int m = 0; m < lattice.modes(); ++m) {
    auto c = lattice.coords(m);
    if (c[axis] % 2 != parity || c[axis] + 1 >= lattice.side()) continue;
    ++c[axis];
    pairs.emplace_back(m, lattice.mode_at(c));
  }
  return pairs;
}

void apply_gate(CMatrix& U, const BeamSplitterGate& gate) {
  if (gate.i < 0 || gate.j < 0 || gate.i >= U.rows() || gate.j >= U.rows() || gate.i == gate.j) {
    throw InvalidArgument("gate modes out of range");
  }
  const Eigen::Matrix2cd g = gate.matrix();
  const Eigen::RowVectorXcd a = U.row(gate.i);
  const Eigen::RowVectorXcd b = U.row(gate.j);
  U.row(gate.i) = g(0, 0) * a + g(0, 1) * b;
  U.row(gate.j) = g(1, 0) * a + g(1, 1) * b;
}

CMatrix circuit_unitary(int modes, const std::vector<BeamSplitterGate>& gates) {
  CMatrix U = CMatrix::Identity(modes, modes);
  for (const auto& g : gates) apply_gate(U, g);
  return U;
}

Circuit build_local_haar_circuit(const CircuitSpec& spec) {
  check_spec(spec);
  Circuit c{spec, Lattice(spec.dim, spec.modes, spec.sources), {}, CMatrix()};
  for (int round = 0; round < spec.depth; ++round) {
    for (int step = 0; step < 2 * spec.dim; ++step) {
      const auto pairs = step_pairs(c.lattice, step);
      for (std::size_t g = 0; g < pairs.size(); ++g) {
        Rng rng(spec.seed, {static_cast<std::uint64_t>(round), static_cast<std::uint64_t>(step), g});
        BeamSplitterGate gate;
        gate.round = round;
        gate.step = step;
        gate.i = pairs[g].first;
        gate.j = pairs[g].second;
        gate.theta = kTwoPi * rng.uniform();
        gate.phi0 = kTwoPi * rng.uniform();
        gate.phi1 = kTwoPi * rng.uniform();
        gate.phi2 = kTwoPi * rng.uniform();
        c.gates.push_back(gate);
      }
    }
  }
  c.U = circuit_unitary(spec.modes, c.gates);
  return c;
}

std::uint64_t ensemble_seed(std::uint64_t seed, std::uint64_t c) { return Rng(seed, {kEnsembleStream, c}).engine()(); }

std::vector<std::vector<double>> expected_mass_profile(const Lattice& lattice, int source, int rounds) {
  if (source < 0 || source >= lattice.modes()) throw InvalidArgument("source out of range");
  std::vector<double> p(lattice.modes(), 0.0);
  p[source] = 1.0;
  std::vector<std::vector<double>> out;
  for (int r = 0; r < rounds; ++r) {
    for (int step = 0; step < 2 * lattice.dim(); ++step) {
      for (const auto& [i, j] : step_pairs(lattice, step)) {
        const double avg = 0.5 * (p[i] + p[j]);
        p[i] = avg;
        p[j] = avg;
      }
    }
    out.push_back(p);
  }
  return out;
}

DiffusionReport diffusion_check(const CircuitSpec& spec, int source, int n_circuits, double distance,
                                DistanceMetric metric) {
  check_spec(spec);
  if (n_circuits < 2) throw InvalidArgument("diffusion check needs at least two circuits");
  const Lattice lattice(spec.dim, spec.modes, spec.sources);
  if (source < 0 || source >= lattice.modes()) throw InvalidArgument("source out of range");
  const int M = lattice.modes();
  const int depth = spec.depth;
  DiffusionReport rep;
  rep.n_circuits = n_circuits;
  rep.source = source;
  rep.distance = distance;
  rep.mean_profile.assign(depth, std::vector<double>(M, 0.0));
  rep.displacement_variance.assign(depth, 0.0);
  rep.mean_leakage.assign(depth, 0.0);

  // Per-gate sums of d = |v'_i|^2 - (|v_i|^2 + |v_j|^2) / 2 and d^2.
  std::vector<double> dsum, dsq;
  std::vector<double> disp(M), far(M);
  for (int j = 0; j < M; ++j) {
    disp[j] = squared_displacement(lattice, j, source);
    far[j] = lattice.distance(j, source, metric) > distance + 1e-9 ? 1.0 : 0.0;
  }
  for (int c = 0; c < n_circuits; ++c) {
    CircuitSpec sc = spec;
    sc.seed = ensemble_seed(spec.seed, static_cast<std::uint64_t>(c));
    const Circuit circ = build_local_haar_circuit(sc);
    CVector v = CVector::Zero(M);
    v(source) = 1.0;
    std::size_t gi = 0;
    dsum.resize(circ.gates.size(), 0.0);
    dsq.resize(circ.gates.size(), 0.0);
    for (int r = 0; r < depth; ++r) {
      for (; gi < circ.gates.size() && circ.gates[gi].round == r; ++gi) {
        const auto& g = circ.gates[gi];
        const Eigen::Matrix2cd m = g.matrix();
        const Complex a = v(g.i);
        const Complex b = v(g.j);
        v(g.i) = m(0, 0) * a + m(0, 1) * b;
        v(g.j) = m(1, 0) * a + m(1, 1) * b;
        const double d = std::norm(v(g.i)) - 0.5 * (std::norm(a) + std::norm(b));
        dsum[gi] += d;
        dsq[gi] += d * d;
      }
      for (int j = 0; j < M; ++j) {
        const double p = std::norm(v(j));
        rep.mean_profile[r][j] += p;
        rep.displacement_variance[r] += p * disp[j];
        rep.mean_leakage[r] += p * far[j];
      }
    }
  }
  const double n = n_circuits;
  for (int r = 0; r < depth; ++r) {
    for (double& p : rep.mean_profile[r]) p /= n;
    rep.displacement_variance[r] /= n;
    rep.mean_leakage[r] /= n;
    rep.leakage_bound.push_back(leakage_bound(lattice.dim(), distance, 2.0 * (r + 1)));
  }
  for (std::size_t g = 0; g < dsum.size(); ++g) {
    const double mean = dsum[g] / n;
    const double var = std::max(0.0, dsq[g] / n - mean * mean);
    if (var < 1e-24) continue;
    const double z = std::abs(mean) / std::sqrt(var / (n - 1.0));
    rep.max_identity_z = std::max(rep.max_identity_z, z);
    ++rep.identity_checks;
  }
  if (depth >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int r = 0; r < depth; ++r) {
      const double x = r + 1.0, y = rep.displacement_variance[r];
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      syy += y * y;
    }
    const double k = depth;
    const double cov = sxy - sx * sy / k;
    const double vx = sxx - sx * sx / k;
    const double vy = syy - sy * sy / k;
    rep.slope = cov / vx;
    rep.intercept = (sy - rep.slope * sx) / k;
    rep.r_squared = vy > 0.0 ? cov * cov / (vx * vy) : 1.0;
  }
  return rep;
}

double easy_depth(int dim, double k, double gamma, int sources, double epsilon, DepthVariant variant,
                  double kappa) {
  if (dim < 1 || sources < 1 || !(k > 0.0)) throw InvalidArgument("easy_depth needs d >= 1, N >= 1, k > 0");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const double N = sources;
  if (variant == DepthVariant::log1d) {
    if (dim != 1) throw InvalidArgument("logarithmic variant applies to d = 1");
    const double lg = std::log(N);
    return k * k * kappa * kappa * std::pow(N, 2.0 * (gamma - 1.0) - epsilon) * lg * lg / 2.0;
  }
  return dim * std::pow(k, 2.0 / dim) * std::pow(N, 2.0 * (gamma - 1.0) / dim - epsilon) / 8.0;
}

double easy_depth(const CircuitSpec& spec, double epsilon, DepthVariant variant, double kappa) {
  return easy_depth(spec.dim, spec.k(), spec.gamma, spec.sources, epsilon, variant, kappa);
}

double width_forecast(int dim, int sources, double alpha) {
  if (dim < 1 || sources < 1) throw InvalidArgument("width forecast needs d >= 1, N >= 1");
  return std::pow(static_cast<double>(sources), alpha / dim + (dim - 1.0) / dim);
}

}  // namespace bstw
