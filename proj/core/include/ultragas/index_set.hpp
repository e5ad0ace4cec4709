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

#ifndef ULTRAGAS_INDEX_SET_HPP
#define ULTRAGAS_INDEX_SET_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ultragas {

/// Bitmask over particle labels; bit (i - 1) is set when label i is present.
using Mask = std::uint32_t;

/// Largest label representable in a Mask.
inline constexpr int kMaxLabel = 30;

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask full_mask(int n) { return n <= 0 ? 0u : (Mask{1} << n) - 1u; }

/// Sorted, duplicate-free set of particle labels drawn from {1..kMaxLabel}.
class IndexSet {
 public:
  IndexSet() = default;
  /// Throws std::invalid_argument on labels outside [1, kMaxLabel]; the input
  /// is sorted and deduplicated.
  IndexSet(std::initializer_list<int> labels);
  explicit IndexSet(std::vector<int> labels);

  static IndexSet range(int n);  // {1..n}
  static IndexSet from_mask(Mask m);

  Mask mask() const { return mask_; }
  const std::vector<int>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(int label) const;
  bool is_subset_of(const IndexSet& other) const {
    return (mask_ & ~other.mask_) == 0;
  }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  std::string to_string() const;  // "{1,2,3}"

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.mask_ == b.mask_;
  }
  friend auto operator<=>(const IndexSet& a, const IndexSet& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<int> members_;
  Mask mask_ = 0;
};

}  // namespace ultragas

#endif  // ULTRAGAS_INDEX_SET_HPP
