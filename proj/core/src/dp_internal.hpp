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

#ifndef BSTW_DP_INTERNAL_HPP
#define BSTW_DP_INTERNAL_HPP

#include <functional>
#include <vector>

#include "bstw/graph.hpp"
#include "bstw/subset_convolution.hpp"
#include "bstw/types.hpp"

namespace bstw::detail {

/// Largest bag, in vertices, accepted by the subset DP.
inline constexpr int kMaxBagBits = 24;
/// Largest mixed-radix table accepted by the weighted DP.
inline constexpr long long kMaxWeightedTable = 1LL << 24;

/// Tree over global vertex ids 0..V-1; node 0 is the root, bags sorted.
struct DpTree {
  std::vector<std::vector<int>> bags;
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
};

/// Builds a DpTree from a decomposition; `id` maps (is_row, label) to a vertex id.
DpTree make_dp_tree(const TreeDecomposition& td, const std::function<int(bool, int)>& id);

/// Table over all subsets of `bag` (bit i = bag[i]) of the matrix, or of its
/// negation when `negated` is set.
using BaseFn = std::function<SubsetTable(const std::vector<int>& bag, bool negated)>;

/// Root table of the subset DP; the full-set entry is the answer.
SubsetTable subset_dp(const DpTree& tree, const BaseFn& base);

/// Mixed-radix table over a bag: digit i ranges over 0..caps[i], digit 0 is
/// least significant. Entries are scaled by the product of digit factorials.
using WeightedBaseFn =
    std::function<std::vector<Complex>(const std::vector<int>& bag, const std::vector<int>& caps, bool negated)>;

/// Root table of the weighted DP, `caps` indexed by global vertex id.
std::vector<Complex> weighted_dp(const DpTree& tree, const std::vector<int>& caps, const WeightedBaseFn& base);

/// Mixed-radix helpers.
long long table_size(const std::vector<int>& caps);
void check_bag_bits(std::size_t bits);

}  // namespace bstw::detail

#endif  // BSTW_DP_INTERNAL_HPP
