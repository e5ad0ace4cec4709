// Copyright 2026 The ultragas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ULTRAGAS_PARTITIONS_HPP
#define ULTRAGAS_PARTITIONS_HPP

#include <algorithm>
#include <span>
#include <vector>

#include "ultragas/index_set.hpp"

namespace ultragas {

/// Calls `f(std::span<const Mask>)` once per set partition of `set` whose
/// number of blocks lies in [min_blocks, max_blocks].
///
/// Partitions are produced in restricted-growth-string order over the
/// elements of `set` taken in increasing label order, so block k is the block
/// whose smallest element is the k-th smallest block minimum. The span is only
/// valid for the duration of the call.
template <class F>
void for_each_set_partition(Mask set, int min_blocks, int max_blocks, F&& f) {
  std::vector<Mask> bits;
  for (Mask rest = set; rest != 0; rest &= rest - 1) bits.push_back(rest & (~rest + 1u));
  const int m = static_cast<int>(bits.size());
  if (m == 0) return;
  max_blocks = std::min(max_blocks, m);
  if (min_blocks < 1) min_blocks = 1;
  if (min_blocks > max_blocks) return;

  // rgs[i] <= prefix_max[i] + 1, where prefix_max[i] = max(rgs[0..i-1]).
  std::vector<int> rgs(m, 0), prefix_max(m, 0);
  std::vector<Mask> blocks;
  blocks.reserve(m);
  while (true) {
    const int count = std::max(prefix_max[m - 1], rgs[m - 1]) + 1;
    if (count >= min_blocks && count <= max_blocks) {
      blocks.assign(count, 0);
      for (int i = 0; i < m; ++i) blocks[rgs[i]] |= bits[i];
      f(std::span<const Mask>(blocks));
    }
    int i = m - 1;
    while (i > 0 && (rgs[i] > prefix_max[i] || rgs[i] + 1 >= max_blocks)) --i;
    if (i == 0) break;
    ++rgs[i];
    for (int j = i + 1; j < m; ++j) {
      rgs[j] = 0;
      prefix_max[j] = std::max(prefix_max[j - 1], rgs[j - 1]);
    }
  }
}

}  // namespace ultragas

#endif  // ULTRAGAS_PARTITIONS_HPP
