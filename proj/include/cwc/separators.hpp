// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cwc/digraph.hpp"

namespace cwc {

enum class CutStatus {
  Found,        // separator of size <= budget returned
  ExceedsBudget,
  Inseparable,  // a direct X->Y arc; no vertex separator exists at all
};

struct CutResult {
  CutStatus status = CutStatus::ExceedsBudget;
  VertexSet cut;
};

namespace detail {

// Unit vertex-capacity flow network: every vertex outside X u Y is split into
// in/out halves; vertices in `forbidden` get capacity budget+1 so a finite
// cut never uses them. Arcs have unbounded capacity.
class VertexCutSolver {
 public:
  VertexCutSolver(const Digraph& g, const VertexSet& x, const VertexSet& y,
                  const VertexSet& forbidden, int budget)
      : g_(g), x_(x), y_(y), budget_(budget) {
    const int n = g.vertex_count();
    cap_.assign(static_cast<size_t>(n), 1);
    for (VertexId v : forbidden) cap_[static_cast<size_t>(v)] = budget + 1;

    // node ids: source = 2n, sink = 2n+1, v_in = 2v, v_out = 2v+1
    node_count_ = 2 * n + 2;
    source_ = 2 * n;
    sink_ = 2 * n + 1;
    head_.clear();
    next_.clear();
    first_.assign(static_cast<size_t>(node_count_), -1);
    capv_.clear();

    for (VertexId v = 0; v < n; ++v) {
      if (x_.contains(v) || y_.contains(v)) continue;
      add_edge(2 * v, 2 * v + 1, cap_[static_cast<size_t>(v)]);
    }
    const int inf = budget + 2;
    for (const Arc& a : g.arcs()) {
      int from = out_node(a.tail);
      int to = in_node(a.head);
      if (from == sink_ || to == source_) continue;  // arcs out of Y / into X are irrelevant
      if (from == source_ && to == sink_) {
        direct_arc_ = true;
        continue;
      }
      add_edge(from, to, inf);
    }
  }

  bool has_direct_arc() const { return direct_arc_; }

  // Max flow capped at budget+1. Returns the flow value reached.
  int run() {
    int flow = 0;
    while (flow <= budget_) {
      if (!augment()) break;
      ++flow;
    }
    return flow;
  }

  // Min cut closest to X: vertices v whose in-half is residually reachable
  // from the source while the out-half is not.
  VertexSet cut_near_source() const {
    std::vector<char> seen = residual_reach_from(source_);
    return crossing(seen, /*from_source=*/true);
  }

  // Min cut closest to Y (maximum reach of X).
  VertexSet cut_near_sink() const {
    std::vector<char> seen = residual_coreach_to(sink_);
    return crossing(seen, /*from_source=*/false);
  }

 private:
  int in_node(VertexId v) const {
    if (x_.contains(v)) return source_;
    if (y_.contains(v)) return sink_;
    return 2 * v;
  }
  int out_node(VertexId v) const {
    if (x_.contains(v)) return source_;
    if (y_.contains(v)) return sink_;
    return 2 * v + 1;
  }

  void add_edge(int from, int to, int capacity) {
    head_.push_back(to);
    capv_.push_back(capacity);
    next_.push_back(first_[static_cast<size_t>(from)]);
    first_[static_cast<size_t>(from)] = static_cast<int>(head_.size()) - 1;
    head_.push_back(from);
    capv_.push_back(0);
    next_.push_back(first_[static_cast<size_t>(to)]);
    first_[static_cast<size_t>(to)] = static_cast<int>(head_.size()) - 1;
  }

  bool augment() {
    std::vector<int> via(static_cast<size_t>(node_count_), -1);
    std::vector<char> seen(static_cast<size_t>(node_count_), 0);
    seen[static_cast<size_t>(source_)] = 1;
    std::vector<int> queue{source_};
    for (size_t qi = 0; qi < queue.size() && !seen[static_cast<size_t>(sink_)]; ++qi) {
      int v = queue[qi];
      for (int e = first_[static_cast<size_t>(v)]; e != -1; e = next_[static_cast<size_t>(e)]) {
        if (capv_[static_cast<size_t>(e)] <= 0) continue;
        int w = head_[static_cast<size_t>(e)];
        if (seen[static_cast<size_t>(w)]) continue;
        seen[static_cast<size_t>(w)] = 1;
        via[static_cast<size_t>(w)] = e;
        queue.push_back(w);
      }
    }
    if (!seen[static_cast<size_t>(sink_)]) return false;
    for (int v = sink_; v != source_;) {
      int e = via[static_cast<size_t>(v)];
      capv_[static_cast<size_t>(e)] -= 1;
      capv_[static_cast<size_t>(e ^ 1)] += 1;
      v = head_[static_cast<size_t>(e ^ 1)];
    }
    return true;
  }

  std::vector<char> residual_reach_from(int s) const {
    std::vector<char> seen(static_cast<size_t>(node_count_), 0);
    seen[static_cast<size_t>(s)] = 1;
    std::vector<int> queue{s};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int e = first_[static_cast<size_t>(v)]; e != -1; e = next_[static_cast<size_t>(e)]) {
        if (capv_[static_cast<size_t>(e)] <= 0) continue;
        int w = head_[static_cast<size_t>(e)];
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          queue.push_back(w);
        }
      }
    }
    return seen;
  }

  // nodes that can reach t in the residual graph
  std::vector<char> residual_coreach_to(int t) const {
    std::vector<std::vector<int>> rev_edges(static_cast<size_t>(node_count_));
    for (int v = 0; v < node_count_; ++v) {
      for (int e = first_[static_cast<size_t>(v)]; e != -1; e = next_[static_cast<size_t>(e)]) {
        if (capv_[static_cast<size_t>(e)] > 0) rev_edges[static_cast<size_t>(head_[static_cast<size_t>(e)])].push_back(v);
      }
    }
    std::vector<char> seen(static_cast<size_t>(node_count_), 0);
    seen[static_cast<size_t>(t)] = 1;
    std::vector<int> queue{t};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      for (int w : rev_edges[static_cast<size_t>(queue[qi])]) {
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          queue.push_back(w);
        }
      }
    }
    return seen;
  }

  VertexSet crossing(const std::vector<char>& marked, bool from_source) const {
    VertexSet cut;
    for (VertexId v = 0; v < g_.vertex_count(); ++v) {
      if (x_.contains(v) || y_.contains(v)) continue;
      bool in_marked = marked[static_cast<size_t>(2 * v)] != 0;
      bool out_marked = marked[static_cast<size_t>(2 * v + 1)] != 0;
      if (from_source ? (in_marked && !out_marked) : (out_marked && !in_marked)) cut.insert(v);
    }
    return cut;
  }

  const Digraph& g_;
  VertexSet x_, y_;
  int budget_;
  std::vector<int> cap_;
  int node_count_ = 0, source_ = 0, sink_ = 0;
  bool direct_arc_ = false;
  std::vector<int> head_, next_, capv_;
  std::vector<int> first_;
};

}  // namespace detail

// Minimum X-Y vertex separator within V \ (X u Y u forbidden is excluded by
// capacity), if its size is at most `budget`.
inline CutResult min_vertex_cut(const Digraph& g, const VertexSet& x, const VertexSet& y, int budget,
                                const VertexSet& forbidden = {}) {
  if (!disjoint(x, y)) throw std::invalid_argument("X and Y must be disjoint");
  detail::VertexCutSolver solver(g, x, y, forbidden, budget);
  if (solver.has_direct_arc()) return {CutStatus::Inseparable, {}};
  int flow = solver.run();
  if (flow > budget) return {CutStatus::ExceedsBudget, {}};
  return {CutStatus::Found, solver.cut_near_source()};
}

namespace detail {

struct FarthestCut {
  CutStatus status;
  VertexSet cut;
  int size = 0;
};

inline FarthestCut farthest_min_cut(const Digraph& g, const VertexSet& x, const VertexSet& y, int budget,
                                    const VertexSet& forbidden) {
  VertexCutSolver solver(g, x, y, forbidden, budget);
  if (solver.has_direct_arc()) return {CutStatus::Inseparable, {}, 0};
  int flow = solver.run();
  if (flow > budget) return {CutStatus::ExceedsBudget, {}, flow};
  return {CutStatus::Found, solver.cut_near_sink(), flow};
}

inline bool is_separator(const Digraph& g, const VertexSet& x, const VertexSet& y, const VertexSet& s) {
  VertexSet reach = reachable_from(g.without_vertices(s), x);
  for (VertexId v : y)
    if (reach.contains(v)) return false;
  return true;
}

inline bool is_minimal_separator(const Digraph& g, const VertexSet& x, const VertexSet& y, const VertexSet& s) {
  if (!is_separator(g, x, y, s)) return false;
  for (VertexId v : s) {
    VertexSet smaller = s;
    smaller.erase(v);
    if (is_separator(g, x, y, smaller)) return false;
  }
  return true;
}

inline void enumerate_candidates(const Digraph& g, const VertexSet& x, const VertexSet& y, int budget,
                                 const VertexSet& forbidden, VertexSet chosen,
                                 std::set<VertexSet>& out) {
  FarthestCut fc = farthest_min_cut(g.without_vertices(chosen), x, y, budget, forbidden);
  if (fc.status != CutStatus::Found) return;
  if (fc.size == 0) {
    out.insert(chosen);
    return;
  }
  if (budget == 0) return;
  VertexId v = *fc.cut.begin();
  // v in the separator
  VertexSet with_v = chosen;
  with_v.insert(v);
  enumerate_candidates(g, x, y, budget - 1, forbidden, with_v, out);
  // v on the X side
  VertexSet x2 = x;
  x2.insert(v);
  bool direct = false;
  for (const Arc& a : g.arcs()) {
    if (a.tail == v && y.contains(a.head)) {
      direct = true;
      break;
    }
  }
  if (!direct) enumerate_candidates(g, x2, y, budget, forbidden, chosen, out);
}

}  // namespace detail

// Exactly the important X-Y separators of size at most `budget`: minimal
// separators undominated in the (size, reach-of-X) order. The branching
// produces a superset of candidates which is then filtered by definition;
// every important separator is one of the candidates, and any separator that
// dominates another does so transitively through an important one of size at
// most `budget`, so filtering within the pool is exact.
// Result sorted by (size, lexicographic).
inline std::vector<VertexSet> important_separators(const Digraph& g, const VertexSet& x, const VertexSet& y,
                                                   int budget, const VertexSet& forbidden = {}) {
  if (!disjoint(x, y)) throw std::invalid_argument("X and Y must be disjoint");
  for (const Arc& a : g.arcs()) {
    if (x.contains(a.tail) && y.contains(a.head)) throw std::invalid_argument("direct X->Y arc: inseparable");
  }
  if (budget < 0) return {};
  std::set<VertexSet> candidates;
  detail::enumerate_candidates(g, x, y, budget, forbidden, {}, candidates);

  std::vector<VertexSet> minimal;
  for (const VertexSet& s : candidates) {
    if (detail::is_minimal_separator(g, x, y, s)) minimal.push_back(s);
  }
  std::vector<VertexSet> reaches;
  reaches.reserve(minimal.size());
  for (const VertexSet& s : minimal) reaches.push_back(reachable_from(g.without_vertices(s), x));

  std::vector<VertexSet> important;
  for (size_t i = 0; i < minimal.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < minimal.size() && !dominated; ++j) {
      if (i == j || minimal[j] == minimal[i]) continue;
      if (minimal[j].size() <= minimal[i].size() &&
          set_minus(reaches[i], reaches[j]).empty()) {
        dominated = true;
      }
    }
    if (!dominated) important.push_back(minimal[i]);
  }
  std::sort(important.begin(), important.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return important;
}

// Ordered family of pairwise-disjoint nonempty vertex sets W_1..W_r.
struct SkewFamily {
  std::vector<VertexSet> parts;
};

inline void validate_skew_family(const SkewFamily& fam) {
  for (size_t i = 0; i < fam.parts.size(); ++i) {
    if (fam.parts[i].empty()) throw std::invalid_argument("skew family parts must be nonempty");
    for (size_t j = i + 1; j < fam.parts.size(); ++j) {
      if (!disjoint(fam.parts[i], fam.parts[j])) throw std::invalid_argument("skew family parts must be disjoint");
    }
  }
}

struct SkewResult {
  CutStatus status = CutStatus::ExceedsBudget;
  VertexSet separator;
};

namespace detail {

inline std::optional<VertexSet> skew_recurse(const Digraph& g, const std::vector<VertexSet>& parts,
                                             size_t from, int budget, const VertexSet& all_parts) {
  if (from + 1 >= parts.size()) return VertexSet{};
  VertexSet targets;
  for (size_t j = from + 1; j < parts.size(); ++j) targets = set_union(targets, parts[j]);
  VertexSet forbidden = set_minus(all_parts, set_union(parts[from], targets));
  for (const VertexSet& sep : important_separators(g, parts[from], targets, budget, forbidden)) {
    auto rest = skew_recurse(g.without_vertices(sep), parts, from + 1, budget - sep.size(), all_parts);
    if (rest) return set_union(sep, *rest);
  }
  return std::nullopt;
}

}  // namespace detail

// Skew separator: S avoiding all parts such that no W_i -> W_j path survives
// for i < j, of size at most `budget`. Branches over important separators
// cutting W_1 from the union of the later parts, then recurses on the
// residual family.
inline SkewResult skew_separator(const Digraph& g, const SkewFamily& fam, int budget) {
  validate_skew_family(fam);
  VertexSet all_parts;
  for (const VertexSet& p : fam.parts) all_parts = set_union(all_parts, p);
  for (const Arc& a : g.arcs()) {
    for (size_t i = 0; i < fam.parts.size(); ++i) {
      if (!fam.parts[i].contains(a.tail)) continue;
      for (size_t j = i + 1; j < fam.parts.size(); ++j) {
        if (fam.parts[j].contains(a.head)) return {CutStatus::Inseparable, {}};
      }
    }
  }
  if (budget < 0) return {CutStatus::ExceedsBudget, {}};
  auto res = detail::skew_recurse(g, fam.parts, 0, budget, all_parts);
  if (!res) return {CutStatus::ExceedsBudget, {}};
  return {CutStatus::Found, *res};
}

}  // namespace cwc
