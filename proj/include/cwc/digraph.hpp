// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace cwc {

using VertexId = int;

// Sorted, duplicate-free set of vertex ids. Ids always refer to the owning
// digraph's original numbering; subgraphs are taken by masking, never by
// re-indexing, so certificates stay valid in the caller's id space.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<VertexId> ids) : ids_(ids) { normalize(); }
  explicit VertexSet(std::vector<VertexId> ids) : ids_(std::move(ids)) { normalize(); }

  bool contains(VertexId v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
  }
  void insert(VertexId v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) ids_.insert(it, v);
  }
  void erase(VertexId v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it != ids_.end() && *it == v) ids_.erase(it);
  }
  int size() const { return static_cast<int>(ids_.size()); }
  bool empty() const { return ids_.empty(); }
  void clear() { ids_.clear(); }

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<VertexId>& ids() const { return ids_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) {
    return a.ids_ <=> b.ids_;
  }

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }
  std::vector<VertexId> ids_;
};

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<VertexId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

inline VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
  std::vector<VertexId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

inline VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
  std::vector<VertexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

inline bool disjoint(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else return false;
  }
  return true;
}

struct Arc {
  VertexId tail = 0;
  VertexId head = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Directed multigraph on dense vertex ids 0..n-1. Parallel arcs are allowed.
// Self-loops are accepted by the container; solver entry points that forbid
// them check explicitly.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int vertex_count) : n_(vertex_count) {
    if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  }

  int vertex_count() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const Arc& arc(int i) const { return arcs_[static_cast<size_t>(i)]; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  int add_arc(VertexId tail, VertexId head) {
    check_vertex(tail);
    check_vertex(head);
    arcs_.push_back({tail, head});
    return arc_count() - 1;
  }

  Digraph reversed() const {
    Digraph r(n_);
    for (const Arc& a : arcs_) r.add_arc(a.head, a.tail);
    return r;
  }

  // Same vertex ids; every arc incident to `removed` dropped.
  Digraph without_vertices(const VertexSet& removed) const {
    Digraph r(n_);
    for (const Arc& a : arcs_) {
      if (!removed.contains(a.tail) && !removed.contains(a.head)) r.add_arc(a.tail, a.head);
    }
    return r;
  }

 private:
  void check_vertex(VertexId v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
  }
  int n_ = 0;
  std::vector<Arc> arcs_;
};

// out_adjacency[v] = list of (head, arc index).
inline std::vector<std::vector<std::pair<VertexId, int>>> out_adjacency(const Digraph& g) {
  std::vector<std::vector<std::pair<VertexId, int>>> adj(static_cast<size_t>(g.vertex_count()));
  for (int i = 0; i < g.arc_count(); ++i) {
    const Arc& a = g.arc(i);
    adj[static_cast<size_t>(a.tail)].push_back({a.head, i});
  }
  return adj;
}

namespace detail {

// Tarjan, iterative. Returns component index per vertex (arbitrary ids).
inline std::vector<int> scc_ids(const Digraph& g, int& component_count) {
  const int n = g.vertex_count();
  auto adj = out_adjacency(g);
  std::vector<int> index(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0), comp(static_cast<size_t>(n), -1);
  std::vector<char> on_stack(static_cast<size_t>(n), 0);
  std::vector<int> stack;
  int next_index = 0;
  component_count = 0;

  struct Frame {
    int v;
    size_t next_child;
  };
  std::vector<Frame> frames;

  for (int root = 0; root < n; ++root) {
    if (index[static_cast<size_t>(root)] != -1) continue;
    frames.push_back({root, 0});
    index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = next_index++;
    stack.push_back(root);
    on_stack[static_cast<size_t>(root)] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& out = adj[static_cast<size_t>(f.v)];
      if (f.next_child < out.size()) {
        int w = out[f.next_child].first;
        ++f.next_child;
        if (index[static_cast<size_t>(w)] == -1) {
          index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = next_index++;
          stack.push_back(w);
          on_stack[static_cast<size_t>(w)] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[static_cast<size_t>(w)]) {
          low[static_cast<size_t>(f.v)] = std::min(low[static_cast<size_t>(f.v)], index[static_cast<size_t>(w)]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          int p = frames.back().v;
          low[static_cast<size_t>(p)] = std::min(low[static_cast<size_t>(p)], low[static_cast<size_t>(v)]);
        }
        if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<size_t>(w)] = 0;
            comp[static_cast<size_t>(w)] = component_count;
            if (w == v) break;
          }
          ++component_count;
        }
      }
    }
  }
  return comp;
}

}  // namespace detail

// Strongly connected components C_1..C_t such that for i < j there is no
// directed path from C_i to C_j. Ties between simultaneously available
// components are broken by smallest contained vertex id, so the order is
// canonical.
inline std::vector<VertexSet> scc_topological(const Digraph& g) {
  int count = 0;
  std::vector<int> comp = detail::scc_ids(g, count);
  std::vector<std::vector<VertexId>> members(static_cast<size_t>(count));
  for (int v = 0; v < g.vertex_count(); ++v) members[static_cast<size_t>(comp[static_cast<size_t>(v)])].push_back(v);

  // Kahn over the condensation, emitting sinks first.
  std::vector<int> out_degree(static_cast<size_t>(count), 0);
  std::vector<std::vector<int>> preds(static_cast<size_t>(count));
  {
    std::vector<std::pair<int, int>> seen;
    for (const Arc& a : g.arcs()) {
      int cu = comp[static_cast<size_t>(a.tail)];
      int cv = comp[static_cast<size_t>(a.head)];
      if (cu != cv) seen.push_back({cu, cv});
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto [cu, cv] : seen) {
      ++out_degree[static_cast<size_t>(cu)];
      preds[static_cast<size_t>(cv)].push_back(cu);
    }
  }

  // min-heap keyed by smallest member id
  auto key = [&](int c) { return members[static_cast<size_t>(c)].front(); };
  std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>> ready;
  for (int c = 0; c < count; ++c) {
    std::sort(members[static_cast<size_t>(c)].begin(), members[static_cast<size_t>(c)].end());
    if (out_degree[static_cast<size_t>(c)] == 0) ready.push({key(c), c});
  }
  std::vector<VertexSet> order;
  order.reserve(static_cast<size_t>(count));
  while (!ready.empty()) {
    int c = ready.top().second;
    ready.pop();
    order.push_back(VertexSet(members[static_cast<size_t>(c)]));
    for (int p : preds[static_cast<size_t>(c)]) {
      if (--out_degree[static_cast<size_t>(p)] == 0) ready.push({key(p), p});
    }
  }
  return order;
}

inline VertexSet reachable_from(const Digraph& g, const VertexSet& sources) {
  std::vector<char> seen(static_cast<size_t>(g.vertex_count()), 0);
  auto adj = out_adjacency(g);
  std::vector<VertexId> queue;
  for (VertexId v : sources) {
    if (!seen[static_cast<size_t>(v)]) {
      seen[static_cast<size_t>(v)] = 1;
      queue.push_back(v);
    }
  }
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    for (auto [w, arc] : adj[static_cast<size_t>(queue[qi])]) {
      (void)arc;
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<VertexId> out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (seen[static_cast<size_t>(v)]) out.push_back(v);
  return VertexSet(std::move(out));
}

inline VertexSet co_reachable_to(const Digraph& g, const VertexSet& targets) {
  return reachable_from(g.reversed(), targets);
}

}  // namespace cwc
