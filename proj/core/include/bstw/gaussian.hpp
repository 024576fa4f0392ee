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

#ifndef BSTW_GAUSSIAN_HPP
#define BSTW_GAUSSIAN_HPP

#include <vector>

#include "bstw/types.hpp"

namespace bstw {

/// Wigner covariance V (2M x 2M, xpxp ordering, vacuum I/2) and mean d.
struct GaussianState {
  RMatrix V;
  RVector d;

  int modes() const { return static_cast<int>(V.rows() / 2); }
  static GaussianState vacuum(int modes);
};

/// Complex-form objects of a state, in the (a_1..a_M, a_1^dagger..a_M^dagger) basis.
struct ComplexGaussianView {
  CMatrix Sigma;
  CMatrix Q;
  CMatrix Qinv;
  /// X (I - Q^{-1}); equals B^* (+) B for pure states.
  CMatrix A;
  /// (beta, beta^*) with beta_i = (d_{2i} + i d_{2i+1}) / sqrt(2).
  CVector alpha;
  /// conj(Q^{-1} alpha).
  CVector gamma;
  /// exp(-alpha^dagger Q^{-1} alpha / 2) / sqrt(det Q).
  double prefactor = 0.0;

  int modes() const { return static_cast<int>(Sigma.rows() / 2); }
  /// Lower-right M x M block of A; equals U tanh(r) U^T for pure squeezed inputs.
  CMatrix B() const;
  /// Lower half of gamma, the diagonal paired with B().
  CVector gamma_b() const;
};

/// Squeezed vacuum with r on the sources and vacuum elsewhere.
GaussianState build_input_state(int modes, const std::vector<int>& sources, double r);
GaussianState build_input_state(int modes, const std::vector<double>& r);

/// Block-diagonal symplectic form, blocks [[0, 1], [-1, 0]].
RMatrix symplectic_form(int modes);

/// Symplectic matrix of the passive transformation a -> U a.
RMatrix passive_symplectic(const CMatrix& U);

/// Two-mode unitary [[cos t, e^{i phi} sin t], [-e^{-i phi} sin t, cos t]] on (i, j).
CMatrix beam_splitter_unitary(int modes, int i, int j, double theta, double phi);

GaussianState apply_symplectic(const GaussianState& s, const RMatrix& S);
GaussianState apply_passive_unitary(const GaussianState& s, const CMatrix& U);
GaussianState apply_beam_splitter(const GaussianState& s, int i, int j, double theta, double phi);

/// Symplectic eigenvalues of V in increasing order.
std::vector<double> symplectic_eigenvalues(const RMatrix& V);

/// V + i Omega / 2 >= -tol.
bool satisfies_uncertainty(const GaussianState& s, double tol = 1e-9);

/// Change of basis F with Sigma = F V F^dagger.
CMatrix quadrature_to_ladder(int modes);
ComplexGaussianView complex_view(const GaussianState& s);
/// Inverse of the Sigma = F V F^dagger map.
RMatrix covariance_from_sigma(const CMatrix& Sigma);

/// U diag(tanh r) U^T with r indexed by the columns of U.
CMatrix b_matrix(const CMatrix& U, const std::vector<double>& r);

/// M_A - M_AB M_B^{-1} M_BA for index sets A = keep and B = eliminate.
RMatrix schur_complement(const RMatrix& M, const std::vector<int>& keep, const std::vector<int>& eliminate);
CMatrix schur_complement(const CMatrix& M, const std::vector<int>& keep, const std::vector<int>& eliminate);

/// Marginal state on the listed modes.
GaussianState reduced_state(const GaussianState& s, const std::vector<int>& modes);

/// State of the unmeasured modes (increasing order) after heterodyne outcome
/// mu (2|measured| quadratures, xpxp) on `measured`.
GaussianState condition_on_heterodyne(const GaussianState& s, const std::vector<int>& measured, const RVector& mu);

/// P(m) = prefactor * lHaf(fdiag(A, gamma)_{m (+) m}) / m!; valid for mixed states.
double gbs_probability(const ComplexGaussianView& view, const WeightVector& m, Engine engine = Engine::treedp);
double gbs_probability(const GaussianState& s, const WeightVector& m, Engine engine = Engine::treedp);

/// Pure-state form prefactor * |lHaf(fdiag(B, gamma_b)_m)|^2 / m!.
double gbs_probability_pure(const ComplexGaussianView& view, const WeightVector& m, Engine engine = Engine::treedp);

/// Mean photon number of every mode.
std::vector<double> mean_photon_numbers(const GaussianState& s);

/// C(N/2 + k - 1, k) sech^N r tanh^{2k} r: probability of k photon pairs.
double negative_binomial_pmf(int sources, double r, int k);

/// ceil(2 sech^2 r log(1/eps)), at least 2.
int photon_truncation_threshold(double r, double epsilon);

/// 1 / sqrt(det(V1 + V2)); V1 must be pure.
double fidelity_pure(const RMatrix& V1, const RMatrix& V2);

/// ||X||_F sqrt(N cosh(4r) / 2).
double infidelity_bound(const RMatrix& X, int sources, double r);

}  // namespace bstw

#endif  // BSTW_GAUSSIAN_HPP
