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

#ifndef BSTW_ORACLES_HPP
#define BSTW_ORACLES_HPP

#include <map>
#include <vector>

#include "bstw/types.hpp"

namespace bstw {

inline constexpr long long kOutcomeCountCap = 1000000;
inline constexpr int kFockMaxModes = 3;
inline constexpr int kFockMaxCap = 8;

/// lHaf(B_m) by the multiset expansion along the first occupied mode,
/// memoized over all y <= m. With `loops`, the diagonal of B_m is replaced by
/// the repeated loops vector.
Complex loop_hafnian_multiset(const CMatrix& B, const WeightVector& m);
Complex loop_hafnian_multiset(const CMatrix& B, const CVector& loops, const WeightVector& m);

/// All occupation vectors with |m| = N, in lexicographic order.
std::vector<WeightVector> enumerate_outcomes(int modes, int photons);

/// All occupation vectors with every entry <= m_max, in lexicographic order.
std::vector<WeightVector> enumerate_outcomes_truncated(int modes, int m_max);

/// Few-mode state in the Fock basis truncated at total photon number `cap`.
struct FockState {
  int modes = 0;
  int cap = 0;
  std::map<WeightVector, Complex> amplitudes;
  /// Squared norm kept below the cap.
  double captured_mass = 0.0;
  /// Squared norm of each single-mode input within the internal cutoff (min over modes).
  double internal_mass = 0.0;

  double probability(const WeightVector& m) const;
};

/// U_passive * prod_i D(beta_i) S(r_i) |0> expanded in the Fock basis.
///
/// S(r) = exp(r (a^dagger^2 - a^2) / 2) and D(beta) act on a large
/// single-mode cutoff; the passive unitary is applied per photon
/// number block as exp(i sum G_kl a_k^dagger a_l) with U = exp(iG).
FockState fock_expansion_gaussian(const CMatrix& U, const std::vector<int>& sources, double r, int cap,
                                  const CVector& displacement = CVector());

}  // namespace bstw

#include "bstw/hafnian.hpp"
#include "bstw/permanent.hpp"

namespace bstw::oracles {
using bstw::enumerate_outcomes;
using bstw::enumerate_outcomes_truncated;
using bstw::fock_expansion_gaussian;
using bstw::hafnian_bruteforce;
using bstw::loop_hafnian_bruteforce;
using bstw::loop_hafnian_multiset;
using bstw::permanent_ryser;
}  // namespace bstw::oracles

#endif  // BSTW_ORACLES_HPP
