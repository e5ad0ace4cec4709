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

#include "ultragas/index_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace ultragas {

IndexSet::IndexSet(std::initializer_list<int> labels)
    : IndexSet(std::vector<int>(labels)) {}

IndexSet::IndexSet(std::vector<int> labels) : members_(std::move(labels)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (int label : members_) {
    if (label < 1 || label > kMaxLabel) {
      throw std::invalid_argument("index label " + std::to_string(label) +
                                  " outside [1, " + std::to_string(kMaxLabel) +
                                  "]");
    }
    mask_ |= Mask{1} << (label - 1);
  }
}

IndexSet IndexSet::range(int n) {
  std::vector<int> labels;
  labels.reserve(n > 0 ? n : 0);
  for (int i = 1; i <= n; ++i) labels.push_back(i);
  return IndexSet(std::move(labels));
}

IndexSet IndexSet::from_mask(Mask m) {
  IndexSet out;
  out.mask_ = m;
  for (int i = 0; m != 0; ++i, m >>= 1) {
    if (m & 1u) out.members_.push_back(i + 1);
  }
  return out;
}

bool IndexSet::contains(int label) const {
  return label >= 1 && label <= kMaxLabel && (mask_ >> (label - 1)) & 1u;
}

std::string IndexSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(members_[i]);
  }
  return s + "}";
}

}  // namespace ultragas
