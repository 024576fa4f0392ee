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

#include "bstw/errors.hpp"
#include "bstw/types.hpp"

#include <numeric>

namespace bstw {

int total(const WeightVector& w) { return std::accumulate(w.begin(), w.end(), 0); }

double factorial_product(const WeightVector& w) {
  double out = 1.0;
  for (int v : w) {
    for (int i = 2; i <= v; ++i) out *= i;
  }
  return out;
}

}  // namespace bstw
