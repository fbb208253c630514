// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>

#include "cwc/labeled_digraph.hpp"

namespace cwc {

// Node Unique Label Cover with a forbidden set, on symmetric labeled
// digraphs (doubling(graph) == graph).
struct UlcInstance {
  LabeledDigraph graph;
  int budget = 0;
  VertexSet forbidden;
};

namespace detail {

// Certificate-guided branching: any colorful walk cover intersects the vertex
// set of the witness returned by find_colorful_walk, so branching on its
// non-forbidden vertices is exhaustive. `min_allowed` restricts branching to
// vertices >= that id, which the lexicographic reconstruction below uses.
inline bool ulc_feasible(const LabeledDigraph& g, VertexSet deleted, int budget, const VertexSet& forbidden,
                         VertexId min_allowed) {
  auto witness = find_colorful_walk(g, deleted);
  if (!witness) return true;
  if (budget == 0) return false;
  VertexSet branch;
  for (const auto& walk : witness->walks) {
    for (int arc : walk) {
      branch.insert(g.arc(arc).tail);
      branch.insert(g.arc(arc).head);
    }
  }
  for (VertexId v : branch) {
    if (v < min_allowed || forbidden.contains(v) || deleted.contains(v)) continue;
    VertexSet next = deleted;
    next.insert(v);
    if (ulc_feasible(g, std::move(next), budget - 1, forbidden, min_allowed)) return true;
  }
  return false;
}

}  // namespace detail

// Minimum-size colorful walk cover disjoint from `forbidden` of size at most
// budget, or nullopt. Minimality by iterative deepening; among minimum
// covers, the lexicographically smallest is returned.
inline std::optional<VertexSet> solve_node_ulc(const UlcInstance& inst) {
  if (!is_symmetric(inst.graph)) throw std::invalid_argument("node ULC expects a symmetric labeled digraph");
  if (inst.budget < 0) return std::nullopt;

  int best = -1;
  for (int b = 0; b <= inst.budget; ++b) {
    if (detail::ulc_feasible(inst.graph, {}, b, inst.forbidden, 0)) {
      best = b;
      break;
    }
  }
  if (best < 0) return std::nullopt;

  VertexSet chosen;
  VertexId floor = 0;
  while (find_colorful_walk(inst.graph, chosen)) {
    bool extended = false;
    for (VertexId v = floor; v < inst.graph.vertex_count(); ++v) {
      if (inst.forbidden.contains(v) || chosen.contains(v)) continue;
      VertexSet next = chosen;
      next.insert(v);
      if (detail::ulc_feasible(inst.graph, next, best - next.size(), inst.forbidden, v + 1)) {
        chosen = std::move(next);
        floor = v + 1;
        extended = true;
        break;
      }
    }
    if (!extended) throw std::logic_error("lexicographic reconstruction lost feasibility");
  }
  return chosen;
}

}  // namespace cwc
