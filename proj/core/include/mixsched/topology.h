// Copyright 2026 The mixsched Authors
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

#ifndef MIXSCHED_TOPOLOGY_H_
#define MIXSCHED_TOPOLOGY_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mixsched {

using LinkId = std::size_t;
// Sorted, duplicate-free list of link indices.
using LinkSet = std::vector<LinkId>;
using Conflict = std::pair<LinkId, LinkId>;

inline constexpr std::size_t kDefaultEnumerationCap = 20;

// Symmetric conflict relation over links 0..link_count-1. Two links joined
// by a conflict may not transmit in the same slot. Immutable once built.
class InterferenceGraph {
 public:
  // Throws GraphError on a self-conflict or an index >= link_count. Duplicate
  // pairs, in either orientation, collapse to one conflict.
  InterferenceGraph(std::size_t link_count, std::span<const Conflict> conflicts);

  std::size_t link_count() const { return link_count_; }
  bool conflicts(LinkId a, LinkId b) const {
    return adjacency_[a * link_count_ + b];
  }
  const std::vector<LinkId>& neighbors(LinkId l) const { return neighbors_[l]; }
  // Normalized (smaller index first), sorted, unique.
  const std::vector<Conflict>& conflict_pairs() const { return pairs_; }

 private:
  std::size_t link_count_;
  std::vector<char> adjacency_;
  std::vector<std::vector<LinkId>> neighbors_;
  std::vector<Conflict> pairs_;
};

// Checks the graph invariants without building a graph.
void validate_graph(std::size_t link_count, std::span<const Conflict> conflicts);

// Throws GraphError if any index is out of range.
bool is_independent(const InterferenceGraph& g, std::span<const LinkId> links);

// All maximal independent sets, each sorted, listed in lexicographic order.
// Throws EnumerationCapError when link_count exceeds `cap`.
std::vector<LinkSet> maximal_independent_sets(
    const InterferenceGraph& g, std::size_t cap = kDefaultEnumerationCap);

}  // namespace mixsched

#endif  // MIXSCHED_TOPOLOGY_H_
