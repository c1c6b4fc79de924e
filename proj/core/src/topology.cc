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

#include "mixsched/topology.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "mixsched/errors.h"

namespace mixsched {

namespace {

std::string pair_text(const Conflict& c) {
  return "(" + std::to_string(c.first) + ", " + std::to_string(c.second) + ")";
}

// Bron-Kerbosch with pivoting, run on the complement of the interference
// graph: cliques of the complement are independent sets of the original.
class MisEnumerator {
 public:
  explicit MisEnumerator(const InterferenceGraph& g) : n_(g.link_count()) {
    const std::uint64_t all = n_ == 64 ? ~0ULL : ((1ULL << n_) - 1);
    compatible_.assign(n_, 0);
    for (LinkId a = 0; a < n_; ++a) {
      std::uint64_t conflict_mask = 1ULL << a;
      for (LinkId b : g.neighbors(a)) conflict_mask |= 1ULL << b;
      compatible_[a] = all & ~conflict_mask;
    }
    expand(0, all, 0);
  }

  std::vector<std::uint64_t> take() { return std::move(found_); }

 private:
  void expand(std::uint64_t r, std::uint64_t p, std::uint64_t x) {
    if (p == 0) {
      if (x == 0) found_.push_back(r);
      return;
    }
    // Pivot on the vertex of P union X with the most compatible candidates.
    const std::uint64_t px = p | x;
    LinkId pivot = static_cast<LinkId>(std::countr_zero(px));
    int best = -1;
    for (std::uint64_t m = px; m != 0; m &= m - 1) {
      const LinkId u = static_cast<LinkId>(std::countr_zero(m));
      const int score = std::popcount(p & compatible_[u]);
      if (score > best) {
        best = score;
        pivot = u;
      }
    }
    for (std::uint64_t m = p & ~compatible_[pivot]; m != 0; m &= m - 1) {
      const LinkId v = static_cast<LinkId>(std::countr_zero(m));
      const std::uint64_t bit = 1ULL << v;
      expand(r | bit, p & compatible_[v], x & compatible_[v]);
      p &= ~bit;
      x |= bit;
    }
  }

  std::size_t n_;
  std::vector<std::uint64_t> compatible_;
  std::vector<std::uint64_t> found_;
};

}  // namespace

void validate_graph(std::size_t link_count,
                    std::span<const Conflict> conflicts) {
  if (link_count == 0) throw GraphError("graph must contain at least one link");
  for (const Conflict& c : conflicts) {
    if (c.first >= link_count || c.second >= link_count) {
      throw GraphError("conflict " + pair_text(c) +
                       " references a link outside [0, " +
                       std::to_string(link_count) + ")");
    }
    if (c.first == c.second) {
      throw GraphError("self-conflict " + pair_text(c));
    }
  }
}

InterferenceGraph::InterferenceGraph(std::size_t link_count,
                                     std::span<const Conflict> conflicts)
    : link_count_(link_count) {
  validate_graph(link_count, conflicts);
  adjacency_.assign(link_count * link_count, 0);
  neighbors_.resize(link_count);
  for (const Conflict& c : conflicts) {
    const auto [a, b] = std::minmax(c.first, c.second);
    if (adjacency_[a * link_count + b]) continue;
    adjacency_[a * link_count + b] = 1;
    adjacency_[b * link_count + a] = 1;
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
    pairs_.emplace_back(a, b);
  }
  for (auto& n : neighbors_) std::sort(n.begin(), n.end());
  std::sort(pairs_.begin(), pairs_.end());
}

bool is_independent(const InterferenceGraph& g, std::span<const LinkId> links) {
  for (LinkId l : links) {
    if (l >= g.link_count()) {
      throw GraphError("link " + std::to_string(l) + " out of range");
    }
  }
  for (std::size_t i = 0; i < links.size(); ++i) {
    for (std::size_t j = i + 1; j < links.size(); ++j) {
      if (g.conflicts(links[i], links[j])) return false;
    }
  }
  return true;
}

std::vector<LinkSet> maximal_independent_sets(const InterferenceGraph& g,
                                              std::size_t cap) {
  if (g.link_count() > cap || g.link_count() > 64) {
    throw EnumerationCapError(
        "exact enumeration refused: " + std::to_string(g.link_count()) +
        " links exceeds the cap of " + std::to_string(std::min<std::size_t>(cap, 64)) +
        "; use the greedy scheduler");
  }
  std::vector<LinkSet> sets;
  for (std::uint64_t mask : MisEnumerator(g).take()) {
    LinkSet s;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      s.push_back(static_cast<LinkId>(std::countr_zero(m)));
    }
    sets.push_back(std::move(s));
  }
  std::sort(sets.begin(), sets.end());
  return sets;
}

}  // namespace mixsched
