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

#include "ultragas/chains.hpp"

#include <algorithm>
#include <string>

namespace ultragas {

int ReducedChain::root_degree() const {
  for (const Branch& b : branches) {
    if (b.members == ground) return b.degree;
  }
  return 0;
}

int ReducedChain::depth(const IndexSet& branch) const {
  const Mask m = branch.mask();
  bool found = false;
  int ancestors = 0;
  for (const Branch& b : branches) {
    const Mask other = b.members.mask();
    if (other == m) {
      found = true;
    } else if ((m & ~other) == 0) {
      ++ancestors;
    }
  }
  if (!found) {
    throw std::invalid_argument("not a branch of this chain: " + branch.to_string());
  }
  return ancestors;
}

std::vector<Branch> ReducedChain::sorted_branches() const {
  std::vector<Branch> out = branches;
  std::sort(out.begin(), out.end(), [](const Branch& a, const Branch& b) {
    return a.members < b.members;
  });
  return out;
}

bool validate_chain(const ReducedChain& chain) {
  const Mask ground = chain.ground.mask();
  const int n = popcount(ground);
  if (n == 0) return false;
  if (n == 1) return chain.branches.empty();

  std::vector<Mask> masks;
  masks.reserve(chain.branches.size());
  bool has_root = false;
  int degree_sum = 0;
  for (const Branch& b : chain.branches) {
    const Mask m = b.members.mask();
    const int size = popcount(m);
    if ((m & ~ground) != 0 || size < 2) return false;
    if (b.degree < 2 || b.degree > size) return false;
    if (std::find(masks.begin(), masks.end(), m) != masks.end()) return false;
    masks.push_back(m);
    has_root = has_root || m == ground;
    degree_sum += b.degree - 1;
  }
  if (!has_root || degree_sum != n - 1) return false;

  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = i + 1; j < masks.size(); ++j) {
      const Mask both = masks[i] & masks[j];
      if (both != 0 && both != masks[i] && both != masks[j]) return false;
    }
  }

  for (std::size_t i = 0; i < masks.size(); ++i) {
    const Mask parent = masks[i];
    Mask covered = 0;
    int children = 0;
    for (std::size_t j = 0; j < masks.size(); ++j) {
      const Mask c = masks[j];
      if (c == parent || (c & ~parent) != 0) continue;
      bool maximal = true;
      for (std::size_t k = 0; k < masks.size() && maximal; ++k) {
        const Mask mid = masks[k];
        if (mid == parent || mid == c || (mid & ~parent) != 0) continue;
        if ((c & ~mid) == 0) maximal = false;
      }
      if (maximal) {
        ++children;
        covered |= c;
      }
    }
    children += popcount(parent & ~covered);
    if (children != chain.branches[i].degree) return false;
  }
  return true;
}

namespace detail {

void check_enumerable(Mask ground, const ChainLimits& limits) {
  if (ground == 0) throw std::invalid_argument("empty index set");
  if (popcount(ground) > limits.max_order) {
    throw OrderLimitError("order " + std::to_string(popcount(ground)) +
                          " exceeds the enumeration cap of " +
                          std::to_string(limits.max_order));
  }
}

}  // namespace detail

namespace {

class MaterializingVisitor {
 public:
  MaterializingVisitor(IndexSet ground, const std::function<void(const ReducedChain&)>& sink)
      : ground_(std::move(ground)), sink_(sink) {}

  void enter(Mask m, int degree) { open_.emplace_back(m, degree); }
  void leave() { open_.pop_back(); }
  void chain() {
    ReducedChain c{ground_, {}};
    c.branches.reserve(open_.size());
    for (const auto& [m, degree] : open_) {
      c.branches.push_back(Branch{IndexSet::from_mask(m), degree});
    }
    sink_(c);
  }

 private:
  IndexSet ground_;
  const std::function<void(const ReducedChain&)>& sink_;
  std::vector<std::pair<Mask, int>> open_;
};

// Integer partitions of `remaining` into parts <= `max_part`, accumulated in
// `parts` (non-increasing).
template <class F>
void for_each_integer_partition(int remaining, int max_part, std::vector<int>& parts, F& f) {
  if (remaining == 0) {
    f(parts);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    parts.push_back(p);
    for_each_integer_partition(remaining - p, p, parts, f);
    parts.pop_back();
  }
}

}  // namespace

void enumerate_reduced_chains(const IndexSet& ground,
                              const std::function<void(const ReducedChain&)>& sink,
                              ChainLimits limits) {
  MaterializingVisitor visitor(ground, sink);
  walk_reduced_chains(ground.mask(), visitor, limits);
}

std::vector<ReducedChain> reduced_chains(const IndexSet& ground, ChainLimits limits) {
  std::vector<ReducedChain> out;
  enumerate_reduced_chains(ground, [&](const ReducedChain& c) { out.push_back(c); }, limits);
  return out;
}

mpz_class count_reduced_chains(int n) {
  if (n <= 0) throw std::invalid_argument("count_reduced_chains requires n >= 1");
  std::vector<mpz_class> factorial(n + 1, 1);
  for (int i = 1; i <= n; ++i) factorial[i] = factorial[i - 1] * i;

  std::vector<mpz_class> count(n + 1, 0);
  count[1] = 1;
  std::vector<int> parts;
  for (int m = 2; m <= n; ++m) {
    mpz_class total = 0;
    auto add = [&](const std::vector<int>& block_sizes) {
      if (block_sizes.size() < 2) return;
      // Set partitions with this block-size multiset:
      // m! / (prod size! * prod multiplicity!).
      mpz_class term = factorial[m];
      mpz_class divisor = 1;
      std::size_t i = 0;
      while (i < block_sizes.size()) {
        std::size_t j = i;
        while (j < block_sizes.size() && block_sizes[j] == block_sizes[i]) {
          divisor *= factorial[block_sizes[j]];
          term *= count[block_sizes[j]];
          ++j;
        }
        divisor *= factorial[j - i];
        i = j;
      }
      total += term / divisor;
    };
    for_each_integer_partition(m, m - 1, parts, add);
    count[m] = total;
  }
  return count[n];
}

std::vector<ReducedChain> break_chain(const ReducedChain& chain) {
  const Mask ground = chain.ground.mask();
  if (popcount(ground) <= 1) return {};
  // Children of the root: maximal proper branches, then leftover singletons.
  std::vector<Mask> children;
  Mask covered = 0;
  for (const Branch& b : chain.branches) {
    const Mask m = b.members.mask();
    if (m == ground) continue;
    bool maximal = true;
    for (const Branch& other : chain.branches) {
      const Mask o = other.members.mask();
      if (o != ground && o != m && (m & ~o) == 0) {
        maximal = false;
        break;
      }
    }
    if (maximal) {
      children.push_back(m);
      covered |= m;
    }
  }
  for (Mask rest = ground & ~covered; rest != 0; rest &= rest - 1) {
    children.push_back(rest & (~rest + 1u));
  }
  std::sort(children.begin(), children.end(), [](Mask a, Mask b) {
    return (a & (~a + 1u)) < (b & (~b + 1u));
  });

  std::vector<ReducedChain> parts;
  parts.reserve(children.size());
  for (Mask child : children) {
    ReducedChain part{IndexSet::from_mask(child), {}};
    for (const Branch& b : chain.branches) {
      if ((b.members.mask() & ~child) == 0) part.branches.push_back(b);
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

ReducedChain assemble_chain(const std::vector<ReducedChain>& parts) {
  if (parts.size() < 2) {
    throw std::invalid_argument("assembling a chain needs at least two parts");
  }
  Mask ground = 0;
  for (const ReducedChain& p : parts) {
    if ((ground & p.ground.mask()) != 0) {
      throw std::invalid_argument("assembled parts must be disjoint");
    }
    ground |= p.ground.mask();
  }
  ReducedChain out{IndexSet::from_mask(ground), {}};
  out.branches.push_back(Branch{out.ground, static_cast<int>(parts.size())});
  for (const ReducedChain& p : parts) {
    out.branches.insert(out.branches.end(), p.branches.begin(), p.branches.end());
  }
  return out;
}

ReducedChain relabel_chain(const ReducedChain& chain, const std::map<int, int>& relabel) {
  auto apply = [&](const IndexSet& set) {
    std::vector<int> labels;
    labels.reserve(set.size());
    for (int i : set) {
      auto it = relabel.find(i);
      if (it == relabel.end()) {
        throw std::invalid_argument("relabeling undefined for label " + std::to_string(i));
      }
      labels.push_back(it->second);
    }
    return IndexSet(std::move(labels));
  };
  ReducedChain out{apply(chain.ground), {}};
  out.branches.reserve(chain.branches.size());
  for (const Branch& b : chain.branches) out.branches.push_back(Branch{apply(b.members), b.degree});
  return out;
}

}  // namespace ultragas
