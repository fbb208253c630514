// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "cwc/digraph.hpp"
#include "cwc/labeled_digraph.hpp"

namespace cwc {

// Annotated DOCT instance: {0,1} arc labels, positive vertex weights in
// [1, 2k+1], budget k. "Odd cycle" means odd label sum.
struct ParityInstance {
  Digraph graph;
  std::vector<int> arc_label;     // per arc, 0 or 1
  std::vector<long long> weight;  // per vertex
  long long budget = 0;
};

inline void validate_parity(const ParityInstance& inst) {
  if (static_cast<int>(inst.arc_label.size()) != inst.graph.arc_count()) throw std::invalid_argument("arc label count mismatch");
  if (static_cast<int>(inst.weight.size()) != inst.graph.vertex_count()) throw std::invalid_argument("weight count mismatch");
  if (inst.budget < 0) throw std::invalid_argument("negative budget");
  for (int l : inst.arc_label) {
    if (l != 0 && l != 1) throw std::invalid_argument("arc label must be 0 or 1");
  }
  for (long long w : inst.weight) {
    if (w < 1 || w > 2 * inst.budget + 1) throw std::invalid_argument("vertex weight outside [1, 2k+1]");
  }
}

inline long long weight_of(const ParityInstance& inst, const VertexSet& x) {
  long long total = 0;
  for (VertexId v : x) total += inst.weight[static_cast<size_t>(v)];
  return total;
}

// ell = 2 lift: a 1-labeled arc crosses layers. A directed odd-label cycle
// through v survives X iff v's two layer copies share a strong component of
// the lift of D - X.
inline bool has_odd_labeled_cycle(const Digraph& g, const std::vector<int>& arc_label, const VertexSet& removed) {
  Digraph lift(2 * g.vertex_count());
  for (int i = 0; i < g.arc_count(); ++i) {
    const Arc& a = g.arc(i);
    if (removed.contains(a.tail) || removed.contains(a.head)) continue;
    int l = arc_label[static_cast<size_t>(i)];
    lift.add_arc(2 * a.tail, 2 * a.head + l);
    lift.add_arc(2 * a.tail + 1, 2 * a.head + (1 - l));
  }
  int count = 0;
  std::vector<int> comp = detail::scc_ids(lift, count);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (removed.contains(v)) continue;
    if (comp[static_cast<size_t>(2 * v)] == comp[static_cast<size_t>(2 * v + 1)]) return true;
  }
  return false;
}

inline bool has_odd_labeled_cycle(const ParityInstance& inst, const VertexSet& removed) {
  return has_odd_labeled_cycle(inst.graph, inst.arc_label, removed);
}

inline bool is_odd_cycle_transversal(const ParityInstance& inst, const VertexSet& x) {
  return !has_odd_labeled_cycle(inst, x);
}

// Shortest nonempty closed odd-label walk, as vertex ids in traversal order
// (first = last omitted). Deterministic; used as the branching certificate by
// the weighted oracle.
inline std::optional<std::vector<VertexId>> find_odd_closed_walk(const Digraph& g,
                                                                 const std::vector<int>& arc_label,
                                                                 const VertexSet& removed) {
  Digraph lift(2 * g.vertex_count());
  for (int i = 0; i < g.arc_count(); ++i) {
    const Arc& a = g.arc(i);
    if (removed.contains(a.tail) || removed.contains(a.head)) continue;
    int l = arc_label[static_cast<size_t>(i)];
    lift.add_arc(2 * a.tail, 2 * a.head + l);
    lift.add_arc(2 * a.tail + 1, 2 * a.head + (1 - l));
  }
  int count = 0;
  std::vector<int> comp = detail::scc_ids(lift, count);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (removed.contains(v)) continue;
    if (comp[static_cast<size_t>(2 * v)] != comp[static_cast<size_t>(2 * v + 1)]) continue;
    auto adj = out_adjacency(lift);
    std::vector<int> via(static_cast<size_t>(lift.vertex_count()), -1);
    std::vector<char> seen(static_cast<size_t>(lift.vertex_count()), 0);
    std::queue<int> q;
    const int s = 2 * v, t = 2 * v + 1;
    seen[static_cast<size_t>(s)] = 1;
    q.push(s);
    while (!q.empty()) {
      int cur = q.front();
      q.pop();
      for (auto [w, arc] : adj[static_cast<size_t>(cur)]) {
        (void)arc;
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          via[static_cast<size_t>(w)] = cur;
          q.push(w);
        }
      }
    }
    std::vector<VertexId> walk;
    for (int cur = t; cur != -1; cur = via[static_cast<size_t>(cur)]) walk.push_back(cur / 2);
    std::reverse(walk.begin(), walk.end());
    walk.pop_back();  // drop the repeated v
    return walk;
  }
  return std::nullopt;
}

inline LabeledDigraph parity_to_labeled(const ParityInstance& inst) {
  LabeledDigraph out(inst.graph.vertex_count(), 2);
  Permutation swap = Permutation::transposition(2, 0, 1);
  Permutation id = Permutation::identity(2);
  for (int i = 0; i < inst.graph.arc_count(); ++i) {
    const Arc& a = inst.graph.arc(i);
    out.add_arc_if_absent(a.tail, a.head, inst.arc_label[static_cast<size_t>(i)] == 1 ? swap : id);
  }
  return out;
}

}  // namespace cwc
