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

#ifndef BSTW_TYPES_HPP
#define BSTW_TYPES_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace bstw {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Nonnegative multiplicities indexed by mode label.
using WeightVector = std::vector<int>;

/// Backend used for permanents and loop hafnians.
enum class Engine { treedp, oracle };

/// Sum of the entries of a weight vector.
int total(const WeightVector& w);

/// Product of factorials of the entries.
double factorial_product(const WeightVector& w);

}  // namespace bstw

#endif  // BSTW_TYPES_HPP
