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

#ifndef BSTW_SUBSET_CONVOLUTION_HPP
#define BSTW_SUBSET_CONVOLUTION_HPP

#include <vector>

#include "bstw/types.hpp"

namespace bstw {

/// Values indexed by the subsets of a ground set of size w (bit i = element i).
using SubsetTable = std::vector<Complex>;

/// h(S) = sum over T subset of S of f(T) g(S \ T).
///
/// Ranked zeta/Moebius transforms; ranks on which f or g vanish identically are
/// skipped, so sparse-rank tables cost less than the dense O(w^2 2^w).
SubsetTable subset_convolution(const SubsetTable& f, const SubsetTable& g);

/// In-place zeta transform: a(S) <- sum over T subset of S of a(T).
void zeta_transform(std::vector<Complex>& a);

/// In-place Moebius transform, inverse of zeta_transform.
void mobius_transform(std::vector<Complex>& a);

}  // namespace bstw

#endif  // BSTW_SUBSET_CONVOLUTION_HPP
