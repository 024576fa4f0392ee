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

#include "bstw/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "bstw/errors.hpp"

namespace bstw {

namespace {

constexpr int kSingleModeCutoff = 120;

CMatrix annihilation(int dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Amplitudes of D(beta) S(r) |0> on the single-mode cutoff.
CVector single_mode(double r, Complex beta) {
  const int dim = kSingleModeCutoff + 1;
  const CMatrix a = annihilation(dim);
  const CMatrix ad = a.adjoint();
  CVector psi = CVector::Zero(dim);
  psi(0) = 1.0;
  if (r != 0.0) {
    const CMatrix gen = 0.5 * r * (ad * ad - a * a);
    psi = gen.exp() * psi;
  }
  if (beta != Complex(0.0)) {
    const CMatrix gen = beta * ad - std::conj(beta) * a;
    psi = gen.exp() * psi;
  }
  // The upper half of the truncated space absorbs the truncation error.
  return psi.head(kSingleModeCutoff / 2 + 1);
}

// Lexicographic successor among vectors with a fixed sum; sets done after the last one.
void next_lex(WeightVector& m, bool& done) {
  const int modes = static_cast<int>(m.size());
  int right = 0;
  for (int i = modes - 2; i >= 0; --i) {
    right += m[i + 1];
    if (right > 0) {
      m[i] += 1;
      for (int j = i + 1; j < modes; ++j) m[j] = 0;
      m[modes - 1] = right - 1;
      return;
    }
  }
  done = true;
}

}  // namespace

Complex loop_hafnian_multiset(const CMatrix& B, const WeightVector& m) {
  if (B.rows() != B.cols()) throw InvalidArgument("multiset loop hafnian needs a square matrix");
  return loop_hafnian_multiset(B, B.diagonal(), m);
}

Complex loop_hafnian_multiset(const CMatrix& B, const CVector& loops, const WeightVector& m) {
  if (B.rows() != B.cols() || static_cast<Eigen::Index>(m.size()) != B.rows() || loops.size() != B.rows()) {
    throw InvalidArgument("multiset loop hafnian needs a square matrix matching m");
  }
  const std::size_t n = m.size();
  std::vector<long long> stride(n);
  long long size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i] < 0) throw InvalidArgument("negative multiplicity");
    stride[i] = size;
    size *= m[i] + 1;
    if (size > kOutcomeCountCap) throw CapExceeded("multiset oracle state space too large");
  }
  std::vector<Complex> memo(static_cast<std::size_t>(size), Complex(0.0));
  std::vector<int> y(n, 0);
  memo[0] = 1.0;
  for (long long idx = 1; idx < size; ++idx) {
    for (std::size_t i = 0; i < n; ++i) {
      if (++y[i] <= m[i]) break;
      y[i] = 0;
    }
    std::size_t a = 0;
    while (y[a] == 0) ++a;
    const long long rest = idx - stride[a];
    Complex v = loops(a) * memo[rest];
    if (y[a] >= 2) v += static_cast<double>(y[a] - 1) * B(a, a) * memo[rest - stride[a]];
    for (std::size_t x = 0; x < n; ++x) {
      if (x == a || y[x] == 0) continue;
      v += static_cast<double>(y[x]) * B(a, x) * memo[rest - stride[x]];
    }
    memo[idx] = v;
  }
  return memo.back();
}

std::vector<WeightVector> enumerate_outcomes(int modes, int photons) {
  if (modes < 1 || photons < 0) throw InvalidArgument("enumerate_outcomes needs modes >= 1, photons >= 0");
  double count = 1.0;
  for (int i = 1; i <= photons; ++i) count = count * (modes - 1 + i) / i;
  if (count > static_cast<double>(kOutcomeCountCap)) throw CapExceeded("outcome count exceeds cap");
  std::vector<WeightVector> out;
  WeightVector m(modes, 0);
  m[modes - 1] = photons;
  bool done = false;
  while (!done) {
    out.push_back(m);
    next_lex(m, done);
  }
  return out;
}

std::vector<WeightVector> enumerate_outcomes_truncated(int modes, int m_max) {
  if (modes < 1 || m_max < 0) throw InvalidArgument("enumerate_outcomes_truncated needs modes >= 1, m_max >= 0");
  if (std::pow(m_max + 1.0, modes) > static_cast<double>(kOutcomeCountCap)) {
    throw CapExceeded("outcome count exceeds cap");
  }
  std::vector<WeightVector> out;
  WeightVector m(modes, 0);
  while (true) {
    out.push_back(m);
    int i = modes - 1;
    while (i >= 0 && m[i] == m_max) m[i--] = 0;
    if (i < 0) break;
    ++m[i];
  }
  return out;
}

double FockState::probability(const WeightVector& m) const {
  auto it = amplitudes.find(m);
  return it == amplitudes.end() ? 0.0 : std::norm(it->second);
}

FockState fock_expansion_gaussian(const CMatrix& U, const std::vector<int>& sources, double r, int cap,
                                  const CVector& displacement) {
  const int M = static_cast<int>(U.rows());
  if (U.cols() != M) throw InvalidArgument("Fock oracle needs a square unitary");
  if (M < 1 || M > kFockMaxModes) throw CapExceeded("Fock oracle limited to M <= " + std::to_string(kFockMaxModes));
  if (cap < 0 || cap > kFockMaxCap) throw CapExceeded("Fock oracle limited to cap <= " + std::to_string(kFockMaxCap));
  if ((U.adjoint() * U - CMatrix::Identity(M, M)).norm() > 1e-8) throw InvalidArgument("Fock oracle needs a unitary");
  if (displacement.size() != 0 && displacement.size() != M) throw InvalidArgument("displacement size mismatch");

  FockState out;
  out.modes = M;
  out.cap = cap;
  out.internal_mass = 1.0;
  for (int s : sources) {
    if (s < 0 || s >= M) throw InvalidArgument("source off range");
  }
  std::vector<CVector> single(M);
  for (int i = 0; i < M; ++i) {
    const bool src = std::find(sources.begin(), sources.end(), i) != sources.end();
    single[i] = single_mode(src ? r : 0.0, displacement.size() ? displacement(i) : Complex(0.0));
    out.internal_mass = std::min(out.internal_mass, single[i].squaredNorm());
  }
  if (out.internal_mass < 1.0 - 1e-6) {
    throw CapExceeded("single-mode cutoff captures less than 1 - 1e-6 of the input state");
  }

  // Passive generator G with U = exp(iG) from the Schur form of the normal matrix U.
  Eigen::ComplexSchur<CMatrix> schur(U);
  const CMatrix& Z = schur.matrixU();
  CVector phases(M);
  for (int i = 0; i < M; ++i) phases(i) = std::arg(schur.matrixT()(i, i));
  const CMatrix G = Z * phases.asDiagonal() * Z.adjoint();

  for (int n = 0; n <= cap; ++n) {
    const auto basis = enumerate_outcomes(M, n);
    const int dim = static_cast<int>(basis.size());
    std::map<WeightVector, int> index;
    for (int i = 0; i < dim; ++i) index[basis[i]] = i;
    CVector in(dim);
    for (int i = 0; i < dim; ++i) {
      Complex amp = 1.0;
      for (int k = 0; k < M; ++k) amp *= single[k](basis[i][k]);
      in(i) = amp;
    }
    CMatrix H = CMatrix::Zero(dim, dim);
    for (int c = 0; c < dim; ++c) {
      for (int l = 0; l < M; ++l) {
        if (basis[c][l] == 0) continue;
        for (int k = 0; k < M; ++k) {
          WeightVector t = basis[c];
          double f = std::sqrt(static_cast<double>(t[l]));
          --t[l];
          f *= std::sqrt(static_cast<double>(t[k] + 1));
          ++t[k];
          H(index.at(t), c) += G(k, l) * f;
        }
      }
    }
    const CMatrix block = (Complex(0.0, 1.0) * H).exp();
    const CVector outv = block * in;
    for (int i = 0; i < dim; ++i) {
      out.amplitudes[basis[i]] = outv(i);
      out.captured_mass += std::norm(outv(i));
    }
  }
  return out;
}

}  // namespace bstw
