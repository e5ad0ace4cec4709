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

#ifndef ULTRAGAS_CHAINS_HPP
#define ULTRAGAS_CHAINS_HPP

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ultragas/index_set.hpp"
#include "ultragas/partitions.hpp"

namespace ultragas {

/// Default hard cap on the order of fully enumerated chain sets.
inline constexpr int kDefaultMaxOrder = 12;

/// Thrown when a request exceeds the configured enumeration cap.
class OrderLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A non-singleton part of a splitting chain together with the number of
/// parts it splits into.
struct Branch {
  IndexSet members;
  int degree = 0;

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// A reduced splitting chain stored as its branch set.
///
/// The branch set is a laminar family containing the ground set (unless the
/// ground set is a singleton, in which case it is empty). Branches are kept in
/// the order the enumerator produced them: parents before children.
struct ReducedChain {
  IndexSet ground;
  std::vector<Branch> branches;

  std::size_t order() const { return ground.size(); }
  /// Degree of the ground set; 0 for the length-0 chain of a singleton.
  int root_degree() const;
  /// Number of strict ancestors of `branch` in the laminar tree. Throws
  /// std::invalid_argument if `branch` is not a branch of this chain.
  int depth(const IndexSet& branch) const;
  /// Branch set as a canonically ordered vector, for order-insensitive
  /// comparisons.
  std::vector<Branch> sorted_branches() const;
};

/// True iff `chain` is a well-formed reduced chain on its ground set: the
/// branches form a laminar family containing the root, each branch has exactly
/// `degree` children (maximal proper sub-branches plus leftover singletons),
/// and the degrees satisfy sum(degree - 1) == |ground| - 1.
bool validate_chain(const ReducedChain& chain);

struct ChainLimits {
  int max_order = kDefaultMaxOrder;
};

namespace detail {

void check_enumerable(Mask ground, const ChainLimits& limits);

// Depth-first walk over all reduced chains of the set on top of `stack`.
// The visitor receives enter(mask, degree) / leave() around each branch and
// chain() once per complete chain.
template <class Visitor>
void walk_chains(std::vector<Mask>& stack, Visitor& visitor) {
  if (stack.empty()) {
    visitor.chain();
    return;
  }
  const Mask top = stack.back();
  stack.pop_back();
  if (popcount(top) == 1) {
    walk_chains(stack, visitor);
  } else {
    for_each_set_partition(top, 2, popcount(top), [&](std::span<const Mask> blocks) {
      visitor.enter(top, static_cast<int>(blocks.size()));
      const std::size_t mark = stack.size();
      for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
        if (popcount(*it) > 1) stack.push_back(*it);
      }
      walk_chains(stack, visitor);
      stack.resize(mark);
      visitor.leave();
    });
  }
  stack.push_back(top);
}

}  // namespace detail

/// Streams every reduced chain of `ground` through `visitor` without
/// materializing them. Throws std::invalid_argument("empty index set") on an
/// empty ground set and OrderLimitError beyond `limits.max_order`.
template <class Visitor>
void walk_reduced_chains(Mask ground, Visitor& visitor, ChainLimits limits = {}) {
  detail::check_enumerable(ground, limits);
  std::vector<Mask> stack{ground};
  detail::walk_chains(stack, visitor);
}

/// Calls `sink` once per reduced chain of `ground`, in deterministic
/// depth-first order (first partitions in restricted-growth order, blocks in
/// order of their smallest label).
void enumerate_reduced_chains(const IndexSet& ground,
                              const std::function<void(const ReducedChain&)>& sink,
                              ChainLimits limits = {});

/// Materialized form of enumerate_reduced_chains, for small ground sets.
std::vector<ReducedChain> reduced_chains(const IndexSet& ground,
                                         ChainLimits limits = {});

/// Number of reduced chains on an n-element set, from the block-size
/// recursion a(n) = sum over set partitions with >= 2 blocks of the product of
/// a(|block|). Throws std::invalid_argument for n <= 0.
mpz_class count_reduced_chains(int n);

/// Splits a chain at its root: one chain per block of the first partition,
/// in the order of the blocks' smallest labels. The length-0 chain breaks into
/// nothing.
std::vector<ReducedChain> break_chain(const ReducedChain& chain);

/// Inverse of break_chain: the ground set is the union of the parts' ground
/// sets and the root degree is the number of parts (>= 2).
ReducedChain assemble_chain(const std::vector<ReducedChain>& parts);

/// Applies a label bijection to every branch. `relabel` maps old label to
/// new label and must be defined on the whole ground set.
ReducedChain relabel_chain(const ReducedChain& chain, const std::map<int, int>& relabel);

}  // namespace ultragas

#endif  // ULTRAGAS_CHAINS_HPP
