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

#ifndef BSTW_RNG_HPP
#define BSTW_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace bstw {

/// Deterministic random stream keyed by a seed and a tuple of counters.
///
/// Two streams with the same seed and keys produce identical draws, so work
/// split across threads by key reproduces the sequential result.
class Rng {
 public:
  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

  double uniform();
  double normal();
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace bstw

#endif  // BSTW_RNG_HPP
