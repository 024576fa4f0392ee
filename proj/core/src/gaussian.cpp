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

#include "bstw/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "bstw/errors.hpp"
#include "bstw/hafnian.hpp"

namespace bstw {

namespace {

constexpr double kSingularRcond = 1e-14;

std::vector<int> quadratures(const std::vector<int>& modes) {
  std::vector<int> q;
  q.reserve(2 * modes.size());
  for (int m : modes) {
    q.push_back(2 * m);
    q.push_back(2 * m + 1);
  }
  return q;
}

template <class Mat>
Mat select(const Mat& M, const std::vector<int>& rows, const std::vector<int>& cols) {
  Mat out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = M(rows[i], cols[j]);
  }
  return out;
}

template <class Mat>
Mat solve_checked(const Mat& A, const Mat& rhs) {
  Eigen::PartialPivLU<Mat> lu(A);
  const double rc = lu.rcond();
  if (!(rc > kSingularRcond)) {
    throw NumericalError("singular block (reciprocal condition " + std::to_string(rc) + ")");
  }
  return lu.solve(rhs);
}

template <class Mat>
Mat schur_impl(const Mat& M, const std::vector<int>& keep, const std::vector<int>& eliminate) {
  if (M.rows() != M.cols()) throw InvalidArgument("Schur complement needs a square matrix");
  std::vector<char> seen(M.rows(), 0);
  for (const auto* set : {&keep, &eliminate}) {
    for (int i : *set) {
      if (i < 0 || i >= M.rows() || seen[i]++) throw InvalidArgument("Schur partition indices invalid or overlapping");
    }
  }
  const Mat MA = select(M, keep, keep);
  if (eliminate.empty()) return MA;
  const Mat MAB = select(M, keep, eliminate);
  const Mat MB = select(M, eliminate, eliminate);
  const Mat MBA = select(M, eliminate, keep);
  return MA - MAB * solve_checked(MB, MBA);
}

void check_modes(int M, const std::vector<int>& modes) {
  std::vector<char> seen(M, 0);
  for (int m : modes) {
    if (m < 0 || m >= M || seen[m]++) throw InvalidArgument("mode " + std::to_string(m) + " invalid or repeated");
  }
}

}  // namespace

GaussianState GaussianState::vacuum(int modes) {
  if (modes < 0) throw InvalidArgument("negative mode count");
  return {0.5 * RMatrix::Identity(2 * modes, 2 * modes), RVector::Zero(2 * modes)};
}

CMatrix ComplexGaussianView::B() const {
  const int M = modes();
  return A.bottomRightCorner(M, M);
}

CVector ComplexGaussianView::gamma_b() const { return gamma.tail(modes()); }

GaussianState build_input_state(int modes, const std::vector<int>& sources, double r) {
  check_modes(modes, sources);
  std::vector<double> rs(modes, 0.0);
  for (int s : sources) rs[s] = r;
  return build_input_state(modes, rs);
}

GaussianState build_input_state(int modes, const std::vector<double>& r) {
  if (static_cast<int>(r.size()) != modes) throw InvalidArgument("squeezing vector must have one entry per mode");
  GaussianState s = GaussianState::vacuum(modes);
  for (int i = 0; i < modes; ++i) {
    s.V(2 * i, 2 * i) = 0.5 * std::exp(2.0 * r[i]);
    s.V(2 * i + 1, 2 * i + 1) = 0.5 * std::exp(-2.0 * r[i]);
  }
  return s;
}

RMatrix symplectic_form(int modes) {
  RMatrix O = RMatrix::Zero(2 * modes, 2 * modes);
  for (int i = 0; i < modes; ++i) {
    O(2 * i, 2 * i + 1) = 1.0;
    O(2 * i + 1, 2 * i) = -1.0;
  }
  return O;
}

RMatrix passive_symplectic(const CMatrix& U) {
  if (U.rows() != U.cols()) throw InvalidArgument("passive transformation needs a square matrix");
  const Eigen::Index M = U.rows();
  RMatrix S(2 * M, 2 * M);
  for (Eigen::Index i = 0; i < M; ++i) {
    for (Eigen::Index j = 0; j < M; ++j) {
      const double re = U(i, j).real();
      const double im = U(i, j).imag();
      S(2 * i, 2 * j) = re;
      S(2 * i, 2 * j + 1) = -im;
      S(2 * i + 1, 2 * j) = im;
      S(2 * i + 1, 2 * j + 1) = re;
    }
  }
  return S;
}

CMatrix beam_splitter_unitary(int modes, int i, int j, double theta, double phi) {
  if (i == j || i < 0 || j < 0 || i >= modes || j >= modes) throw InvalidArgument("beam splitter needs two distinct valid modes");
  CMatrix U = CMatrix::Identity(modes, modes);
  const Complex e = std::polar(1.0, phi);
  U(i, i) = std::cos(theta);
  U(i, j) = e * std::sin(theta);
  U(j, i) = -std::conj(e) * std::sin(theta);
  U(j, j) = std::cos(theta);
  return U;
}

GaussianState apply_symplectic(const GaussianState& s, const RMatrix& S) {
  if (S.rows() != s.V.rows() || S.cols() != s.V.cols()) throw InvalidArgument("symplectic matrix size mismatch");
  const RMatrix O = symplectic_form(s.modes());
  if ((S * O * S.transpose() - O).norm() > 1e-10 * std::max(1.0, S.squaredNorm())) {
    throw NumericalError("transformation is not symplectic");
  }
  RMatrix V = S * s.V * S.transpose();
  V = 0.5 * (V + V.transpose()).eval();
  return {V, S * s.d};
}

GaussianState apply_passive_unitary(const GaussianState& s, const CMatrix& U) {
  if (U.rows() != s.modes()) throw InvalidArgument("unitary size mismatch");
  return apply_symplectic(s, passive_symplectic(U));
}

GaussianState apply_beam_splitter(const GaussianState& s, int i, int j, double theta, double phi) {
  return apply_passive_unitary(s, beam_splitter_unitary(s.modes(), i, j, theta, phi));
}

std::vector<double> symplectic_eigenvalues(const RMatrix& V) {
  const int M = static_cast<int>(V.rows() / 2);
  const RMatrix O = symplectic_form(M);
  Eigen::ComplexEigenSolver<CMatrix> es(CMatrix((Complex(0.0, 1.0) * (O * V).cast<Complex>())));
  std::vector<double> ev;
  for (int k = 0; k < 2 * M; ++k) {
    if (es.eigenvalues()(k).real() > 0) ev.push_back(es.eigenvalues()(k).real());
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

bool satisfies_uncertainty(const GaussianState& s, double tol) {
  const CMatrix H = s.V.cast<Complex>() + Complex(0.0, 0.5) * symplectic_form(s.modes()).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
  return es.eigenvalues().minCoeff() >= -tol;
}

CMatrix quadrature_to_ladder(int modes) {
  const double h = 1.0 / std::sqrt(2.0);
  CMatrix F = CMatrix::Zero(2 * modes, 2 * modes);
  for (int i = 0; i < modes; ++i) {
    F(i, 2 * i) = h;
    F(i, 2 * i + 1) = Complex(0.0, h);
    F(modes + i, 2 * i) = h;
    F(modes + i, 2 * i + 1) = Complex(0.0, -h);
  }
  return F;
}

ComplexGaussianView complex_view(const GaussianState& s) {
  const int M = s.modes();
  const CMatrix F = quadrature_to_ladder(M);
  ComplexGaussianView v;
  v.Sigma = F * s.V.cast<Complex>() * F.adjoint();
  v.Q = v.Sigma + 0.5 * CMatrix::Identity(2 * M, 2 * M);
  Eigen::PartialPivLU<CMatrix> lu(v.Q);
  if (!(lu.rcond() > kSingularRcond)) throw NumericalError("Q matrix is singular");
  const double det = lu.determinant().real();
  if (!(det > 0.0)) throw NumericalError("det(Sigma + I/2) <= 0: unphysical state");
  v.Qinv = lu.inverse();
  CMatrix X = CMatrix::Zero(2 * M, 2 * M);
  X.topRightCorner(M, M).setIdentity();
  X.bottomLeftCorner(M, M).setIdentity();
  v.A = X * (CMatrix::Identity(2 * M, 2 * M) - v.Qinv);
  v.alpha = F * s.d.cast<Complex>();
  v.gamma = (v.Qinv * v.alpha).conjugate();
  const double quad = (v.alpha.adjoint() * v.Qinv * v.alpha)(0).real();
  v.prefactor = std::exp(-0.5 * quad) / std::sqrt(det);
  return v;
}

RMatrix covariance_from_sigma(const CMatrix& Sigma) {
  const int M = static_cast<int>(Sigma.rows() / 2);
  const CMatrix F = quadrature_to_ladder(M);
  return (F.adjoint() * Sigma * F).real();
}

CMatrix b_matrix(const CMatrix& U, const std::vector<double>& r) {
  if (static_cast<Eigen::Index>(r.size()) != U.cols()) throw InvalidArgument("squeezing vector must match U columns");
  CVector t(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) t(i) = std::tanh(r[i]);
  return U * t.asDiagonal() * U.transpose();
}

RMatrix schur_complement(const RMatrix& M, const std::vector<int>& keep, const std::vector<int>& eliminate) {
  return schur_impl(M, keep, eliminate);
}

CMatrix schur_complement(const CMatrix& M, const std::vector<int>& keep, const std::vector<int>& eliminate) {
  return schur_impl(M, keep, eliminate);
}

GaussianState reduced_state(const GaussianState& s, const std::vector<int>& modes) {
  check_modes(s.modes(), modes);
  const auto q = quadratures(modes);
  RVector d(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) d(i) = s.d(q[i]);
  return {select(s.V, q, q), d};
}

GaussianState condition_on_heterodyne(const GaussianState& s, const std::vector<int>& measured, const RVector& mu) {
  const int M = s.modes();
  check_modes(M, measured);
  if (mu.size() != static_cast<Eigen::Index>(2 * measured.size())) {
    throw InvalidArgument("heterodyne outcome needs two quadratures per measured mode");
  }
  if (measured.empty()) return s;
  std::vector<char> is_measured(M, 0);
  for (int b : measured) is_measured[b] = 1;
  std::vector<int> kept;
  for (int i = 0; i < M; ++i) {
    if (!is_measured[i]) kept.push_back(i);
  }
  const auto qa = quadratures(kept);
  const auto qb = quadratures(measured);
  const RMatrix Vh = s.V + 0.5 * RMatrix::Identity(2 * M, 2 * M);
  const RMatrix VAB = select(Vh, qa, qb);
  const RMatrix VB = select(Vh, qb, qb);
  RVector dB(qb.size()), dA(qa.size());
  for (std::size_t i = 0; i < qb.size(); ++i) dB(i) = s.d(qb[i]);
  for (std::size_t i = 0; i < qa.size(); ++i) dA(i) = s.d(qa[i]);
  const RMatrix solved = solve_checked<RMatrix>(VB, RMatrix(mu - dB));
  GaussianState out;
  out.V = schur_impl(Vh, qa, qb) - 0.5 * RMatrix::Identity(qa.size(), qa.size());
  out.V = 0.5 * (out.V + out.V.transpose()).eval();
  out.d = dA + VAB * solved.col(0);
  return out;
}

double gbs_probability(const ComplexGaussianView& view, const WeightVector& m, Engine engine) {
  const int M = view.modes();
  if (static_cast<int>(m.size()) != M) throw InvalidArgument("outcome size mismatch");
  WeightVector mm(2 * M);
  int cap = 1;
  for (int i = 0; i < M; ++i) {
    if (m[i] < 0) throw InvalidArgument("negative photon number");
    mm[i] = mm[i + M] = m[i];
    cap = std::max(cap, m[i]);
  }
  const Complex lhaf = loop_hafnian_filled(view.A, view.gamma, mm, engine, cap);
  return view.prefactor * lhaf.real() / factorial_product(m);
}

double gbs_probability(const GaussianState& s, const WeightVector& m, Engine engine) {
  return gbs_probability(complex_view(s), m, engine);
}

double gbs_probability_pure(const ComplexGaussianView& view, const WeightVector& m, Engine engine) {
  const int M = view.modes();
  if (static_cast<int>(m.size()) != M) throw InvalidArgument("outcome size mismatch");
  int cap = 1;
  for (int v : m) cap = std::max(cap, v);
  const Complex lhaf = loop_hafnian_filled(view.B(), view.gamma_b(), m, engine, cap);
  return view.prefactor * std::norm(lhaf) / factorial_product(m);
}

std::vector<double> mean_photon_numbers(const GaussianState& s) {
  std::vector<double> n(s.modes());
  for (int i = 0; i < s.modes(); ++i) {
    n[i] = 0.5 * (s.V(2 * i, 2 * i) + s.V(2 * i + 1, 2 * i + 1) - 1.0) +
           0.5 * (s.d(2 * i) * s.d(2 * i) + s.d(2 * i + 1) * s.d(2 * i + 1));
  }
  return n;
}

double negative_binomial_pmf(int sources, double r, int k) {
  if (sources < 1 || k < 0) throw InvalidArgument("negative_binomial_pmf needs N >= 1, k >= 0");
  const double t = std::tanh(std::abs(r));
  const double log_sech = -std::log(std::cosh(r));
  const double half = 0.5 * sources;
  if (k == 0) return std::exp(sources * log_sech);
  if (t == 0.0) return 0.0;
  const double log_binom = std::lgamma(half + k) - std::lgamma(half) - std::lgamma(k + 1.0);
  return std::exp(log_binom + sources * log_sech + 2.0 * k * std::log(t));
}

int photon_truncation_threshold(double r, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
  const double sech = 1.0 / std::cosh(r);
  const double v = std::ceil(2.0 * sech * sech * std::log(1.0 / epsilon) - 1e-12);
  return std::max(2, static_cast<int>(v));
}

double fidelity_pure(const RMatrix& V1, const RMatrix& V2) {
  if (V1.rows() != V2.rows() || V1.rows() != V1.cols() || V2.rows() != V2.cols() || V1.rows() % 2) {
    throw InvalidArgument("covariance matrices must be 2M x 2M and equal in size");
  }
  const int M = static_cast<int>(V1.rows() / 2);
  const double pure = std::pow(4.0, -M);
  if (std::abs(V1.determinant() - pure) / pure > 1e-8) throw InvalidArgument("first state is not pure");
  const double det = (V1 + V2).determinant();
  if (!(det > 0.0)) throw NumericalError("det(V1 + V2) <= 0");
  return 1.0 / std::sqrt(det);
}

double infidelity_bound(const RMatrix& X, int sources, double r) {
  return X.norm() * std::sqrt(sources * std::cosh(4.0 * r) / 2.0);
}

}  // namespace bstw
