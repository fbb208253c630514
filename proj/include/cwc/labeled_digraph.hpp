// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "cwc/digraph.hpp"
#include "cwc/permutation.hpp"

namespace cwc {

// Digraph whose arcs carry permutations of {0..ell-1}. No two arcs may share
// (tail, head, label); parallel arcs with distinct labels are fine.
class LabeledDigraph {
 public:
  LabeledDigraph() = default;
  LabeledDigraph(int vertex_count, int ell) : g_(vertex_count), ell_(ell) {
    if (ell <= 0) throw std::invalid_argument("ell must be positive");
  }

  int vertex_count() const { return g_.vertex_count(); }
  int arc_count() const { return g_.arc_count(); }
  int ell() const { return ell_; }
  const Digraph& graph() const { return g_; }
  const Arc& arc(int i) const { return g_.arc(i); }
  const Permutation& label(int i) const { return labels_[static_cast<size_t>(i)]; }
  const std::vector<Permutation>& labels() const { return labels_; }

  bool has_arc(VertexId tail, VertexId head, const Permutation& pi) const {
    auto it = by_endpoints_.find({tail, head});
    if (it == by_endpoints_.end()) return false;
    for (int idx : it->second)
      if (labels_[static_cast<size_t>(idx)] == pi) return true;
    return false;
  }

  int add_arc(VertexId tail, VertexId head, Permutation pi) {
    if (pi.degree() != ell_) throw std::invalid_argument("arc label degree mismatch");
    if (has_arc(tail, head, pi)) throw std::invalid_argument("duplicate labeled arc");
    int idx = g_.add_arc(tail, head);
    labels_.push_back(std::move(pi));
    by_endpoints_[{tail, head}].push_back(idx);
    return idx;
  }

  bool add_arc_if_absent(VertexId tail, VertexId head, const Permutation& pi) {
    if (has_arc(tail, head, pi)) return false;
    add_arc(tail, head, pi);
    return true;
  }

  LabeledDigraph without_vertices(const VertexSet& removed) const {
    LabeledDigraph r(vertex_count(), ell_);
    for (int i = 0; i < arc_count(); ++i) {
      const Arc& a = g_.arc(i);
      if (!removed.contains(a.tail) && !removed.contains(a.head)) r.add_arc(a.tail, a.head, labels_[static_cast<size_t>(i)]);
    }
    return r;
  }

  // Keeps only arcs with both endpoints in `keep`.
  LabeledDigraph induced(const VertexSet& keep) const {
    LabeledDigraph r(vertex_count(), ell_);
    for (int i = 0; i < arc_count(); ++i) {
      const Arc& a = g_.arc(i);
      if (keep.contains(a.tail) && keep.contains(a.head)) r.add_arc(a.tail, a.head, labels_[static_cast<size_t>(i)]);
    }
    return r;
  }

 private:
  Digraph g_;
  int ell_ = 1;
  std::vector<Permutation> labels_;
  std::map<std::pair<VertexId, VertexId>, std::vector<int>> by_endpoints_;
};

// Composed label of a walk given as consecutive arc indices. Empty walk is
// the identity.
inline Permutation sigma_of_walk(const LabeledDigraph& d, const std::vector<int>& walk) {
  Permutation acc = Permutation::identity(d.ell());
  for (size_t t = 0; t < walk.size(); ++t) {
    if (t > 0 && d.arc(walk[t - 1]).head != d.arc(walk[t]).tail) {
      throw std::invalid_argument("walk arcs are not contiguous");
    }
    acc = compose(acc, d.label(walk[t]));
  }
  return acc;
}

// Layered lift H_D: vertex v_i is encoded as v*ell + i, and each labeled arc
// a=(u,v) contributes the arcs (u_i, v_{sigma(a)(i)}). Arc number a*ell + i of
// the lift comes from arc a of d, which is what the walk-recovery code below
// relies on.
inline Digraph build_aux(const LabeledDigraph& d) {
  const int ell = d.ell();
  Digraph h(d.vertex_count() * ell);
  for (int a = 0; a < d.arc_count(); ++a) {
    const Arc& arc = d.arc(a);
    const Permutation& pi = d.label(a);
    for (int i = 0; i < ell; ++i) {
      h.add_arc(arc.tail * ell + i, arc.head * ell + pi.apply(i));
    }
  }
  return h;
}

namespace detail {

// BFS path in `g` from s to t using at least one arc; returns arc indices.
// Works for s == t (nonempty closed walk).
inline std::optional<std::vector<int>> aux_path(const Digraph& g, int s, int t) {
  auto adj = out_adjacency(g);
  const size_t n = static_cast<size_t>(g.vertex_count());
  std::vector<int> via_arc(n, -1), via_from(n, -1);
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  for (auto [w, arc] : adj[static_cast<size_t>(s)]) {
    if (!seen[static_cast<size_t>(w)]) {
      seen[static_cast<size_t>(w)] = 1;
      via_arc[static_cast<size_t>(w)] = arc;
      via_from[static_cast<size_t>(w)] = s;
      q.push(w);
    }
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto [w, arc] : adj[static_cast<size_t>(v)]) {
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        via_arc[static_cast<size_t>(w)] = arc;
        via_from[static_cast<size_t>(w)] = v;
        q.push(w);
      }
    }
  }
  if (!seen[static_cast<size_t>(t)]) return std::nullopt;
  std::vector<int> arcs;
  int cur = t;
  do {
    arcs.push_back(via_arc[static_cast<size_t>(cur)]);
    cur = via_from[static_cast<size_t>(cur)];
  } while (cur != s);
  std::reverse(arcs.begin(), arcs.end());
  return arcs;
}

}  // namespace detail

// True iff d has a u->v walk whose composed label maps alpha to beta. For
// u == v only nonempty closed walks count unless allow_empty is set, in which
// case the zero-length walk additionally realizes (alpha, alpha).
inline bool walk_realizes(const LabeledDigraph& d, VertexId u, VertexId v, int alpha, int beta,
                          bool allow_empty = false) {
  const int ell = d.ell();
  if (alpha < 0 || alpha >= ell || beta < 0 || beta >= ell) throw std::out_of_range("label out of range");
  if (allow_empty && u == v && alpha == beta) return true;
  Digraph h = build_aux(d);
  const int s = u * ell + alpha;
  const int t = v * ell + beta;
  auto adj = out_adjacency(h);
  std::vector<char> seen(static_cast<size_t>(h.vertex_count()), 0);
  std::vector<int> queue;
  for (auto [w, arc] : adj[static_cast<size_t>(s)]) {
    (void)arc;
    if (!seen[static_cast<size_t>(w)]) {
      seen[static_cast<size_t>(w)] = 1;
      queue.push_back(w);
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
  return seen[static_cast<size_t>(t)];
}

struct ColorfulWalkWitness {
  VertexId vertex = -1;
  // walks[i] is a nonempty closed walk at `vertex` (arc indices into the
  // original digraph) whose composed label moves i.
  std::vector<std::vector<int>> walks;
};

namespace detail {

// Any path in H_D between two layers of the same vertex projects to a closed
// walk of D, so the closed-walk queries reduce to strong connectivity of the
// lift: v_i -> v_j reachability for i != j already implies v_j -> v_i.
inline bool host_check(const std::vector<int>& comp, int ell, VertexId v) {
  for (int i = 0; i < ell; ++i) {
    bool moved = false;
    for (int j = 0; j < ell && !moved; ++j) {
      if (j != i && comp[static_cast<size_t>(v * ell + i)] == comp[static_cast<size_t>(v * ell + j)]) moved = true;
    }
    if (!moved) return false;
  }
  return true;
}

}  // namespace detail

inline bool has_colorful_walk(const LabeledDigraph& d, const VertexSet& excluded = {}) {
  if (d.ell() == 1) return false;  // sigma(W)(0) != 0 is impossible
  LabeledDigraph cur = excluded.empty() ? d : d.without_vertices(excluded);
  Digraph h = build_aux(cur);
  int count = 0;
  std::vector<int> comp = detail::scc_ids(h, count);
  for (VertexId v = 0; v < d.vertex_count(); ++v) {
    if (excluded.contains(v)) continue;
    if (detail::host_check(comp, d.ell(), v)) return true;
  }
  return false;
}

// First vertex (in id order) hosting a colorful walk, together with one
// nonempty closed walk per label. The union of the returned walks is a
// v-colorful walk, hence a colorful walk.
inline std::optional<ColorfulWalkWitness> find_colorful_walk(const LabeledDigraph& d,
                                                             const VertexSet& excluded = {}) {
  if (d.ell() == 1) return std::nullopt;
  LabeledDigraph cur = excluded.empty() ? d : d.without_vertices(excluded);
  const int ell = cur.ell();
  Digraph h = build_aux(cur);
  int count = 0;
  std::vector<int> comp = detail::scc_ids(h, count);
  for (VertexId v = 0; v < cur.vertex_count(); ++v) {
    if (excluded.contains(v)) continue;
    if (!detail::host_check(comp, ell, v)) continue;
    ColorfulWalkWitness witness;
    witness.vertex = v;
    for (int i = 0; i < ell; ++i) {
      int target = -1;
      for (int j = 0; j < ell; ++j) {
        if (j != i && comp[static_cast<size_t>(v * ell + i)] == comp[static_cast<size_t>(v * ell + j)]) {
          target = j;
          break;
        }
      }
      auto aux_arcs = detail::aux_path(h, v * ell + i, v * ell + target);
      if (!aux_arcs) throw std::logic_error("lift SCC promised a path that BFS did not find");
      std::vector<int> walk;
      walk.reserve(aux_arcs->size());
      for (int a : *aux_arcs) walk.push_back(a / ell);
      witness.walks.push_back(std::move(walk));
    }
    return witness;
  }
  return std::nullopt;
}

inline bool is_colorful_walk_cover(const LabeledDigraph& d, const VertexSet& cover) {
  return !has_colorful_walk(d, cover);
}

// Symmetric closure: each arc gains its reverse labeled with the inverse
// permutation; duplicates are dropped. Idempotent.
inline LabeledDigraph doubling(const LabeledDigraph& d) {
  LabeledDigraph out(d.vertex_count(), d.ell());
  for (int i = 0; i < d.arc_count(); ++i) {
    out.add_arc_if_absent(d.arc(i).tail, d.arc(i).head, d.label(i));
  }
  for (int i = 0; i < d.arc_count(); ++i) {
    out.add_arc_if_absent(d.arc(i).head, d.arc(i).tail, d.label(i).inverse());
  }
  return out;
}

inline bool is_symmetric(const LabeledDigraph& d) {
  for (int i = 0; i < d.arc_count(); ++i) {
    if (!d.has_arc(d.arc(i).head, d.arc(i).tail, d.label(i).inverse())) return false;
  }
  return true;
}

struct ConsistentLabeling {
  // assignment[v] in {0..ell-1}
  std::vector<int> assignment;
};

inline bool labeling_is_consistent(const LabeledDigraph& d, const std::vector<int>& assignment) {
  for (int i = 0; i < d.arc_count(); ++i) {
    const Arc& a = d.arc(i);
    if (d.label(i).apply(assignment[static_cast<size_t>(a.tail)]) != assignment[static_cast<size_t>(a.head)]) return false;
  }
  return true;
}

// Consistent labeling extending `pinned`, if one exists. Values propagate
// along arcs and inverse arcs per weakly connected component; unpinned
// components try each seed value at their smallest vertex.
inline std::optional<ConsistentLabeling> find_consistent_labeling(
    const LabeledDigraph& d, const std::map<VertexId, int>& pinned = {}) {
  const int n = d.vertex_count();
  const int ell = d.ell();
  for (auto [v, val] : pinned) {
    if (v < 0 || v >= n) throw std::out_of_range("pinned vertex out of range");
    if (val < 0 || val >= ell) throw std::out_of_range("pinned label out of range");
  }

  // constraint edges: (neighbor, permutation to apply to my value)
  std::vector<std::vector<std::pair<VertexId, const Permutation*>>> cons(static_cast<size_t>(n));
  std::vector<Permutation> inverses;
  inverses.reserve(static_cast<size_t>(d.arc_count()));
  for (int i = 0; i < d.arc_count(); ++i) inverses.push_back(d.label(i).inverse());
  for (int i = 0; i < d.arc_count(); ++i) {
    const Arc& a = d.arc(i);
    cons[static_cast<size_t>(a.tail)].push_back({a.head, &d.label(i)});
    cons[static_cast<size_t>(a.head)].push_back({a.tail, &inverses[static_cast<size_t>(i)]});
  }

  std::vector<int> value(static_cast<size_t>(n), -1);
  std::vector<int> comp_of(static_cast<size_t>(n), -1);
  std::vector<std::vector<VertexId>> comps;
  for (VertexId v = 0; v < n; ++v) {
    if (comp_of[static_cast<size_t>(v)] != -1) continue;
    std::vector<VertexId> queue{v};
    comp_of[static_cast<size_t>(v)] = static_cast<int>(comps.size());
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      for (auto [w, pi] : cons[static_cast<size_t>(queue[qi])]) {
        (void)pi;
        if (comp_of[static_cast<size_t>(w)] == -1) {
          comp_of[static_cast<size_t>(w)] = static_cast<int>(comps.size());
          queue.push_back(w);
        }
      }
    }
    comps.push_back(std::move(queue));
  }

  auto propagate = [&](VertexId seed, int seed_value) -> bool {
    // assumes value[] entries of this component are -1 except possibly seeds
    std::vector<VertexId> queue;
    if (value[static_cast<size_t>(seed)] == -1) value[static_cast<size_t>(seed)] = seed_value;
    queue.push_back(seed);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      VertexId u = queue[qi];
      for (auto [w, pi] : cons[static_cast<size_t>(u)]) {
        int want = pi->apply(value[static_cast<size_t>(u)]);
        if (value[static_cast<size_t>(w)] == -1) {
          value[static_cast<size_t>(w)] = want;
          queue.push_back(w);
        } else if (value[static_cast<size_t>(w)] != want) {
          return false;
        }
      }
    }
    return true;
  };

  for (const auto& members : comps) {
    std::vector<std::pair<VertexId, int>> seeds;
    for (VertexId v : members) {
      auto it = pinned.find(v);
      if (it != pinned.end()) seeds.push_back(*it);
    }
    if (!seeds.empty()) {
      for (auto [v, val] : seeds) {
        if (value[static_cast<size_t>(v)] == -1) value[static_cast<size_t>(v)] = val;
        else if (value[static_cast<size_t>(v)] != val) return std::nullopt;
      }
      if (!propagate(seeds.front().first, seeds.front().second)) return std::nullopt;
      for (auto [v, val] : seeds) {
        if (value[static_cast<size_t>(v)] != val) return std::nullopt;
      }
      // all members reached from the first seed since the component is
      // weakly connected
    } else {
      VertexId root = members.front();
      for (VertexId v : members)
        if (v < root) root = v;
      bool done = false;
      for (int guess = 0; guess < ell && !done; ++guess) {
        if (propagate(root, guess)) {
          done = true;
        } else {
          for (VertexId v : members) value[static_cast<size_t>(v)] = -1;
        }
      }
      if (!done) return std::nullopt;
    }
  }

  ConsistentLabeling out;
  out.assignment = std::move(value);
  return out;
}

// Adds, for every ordered pair of distinct x1, x2 in X, one arc labeled with
// the canonical permutation swapping chi(x1) and chi(x2) (identity if they
// agree). Existing identical arcs are not duplicated.
inline LabeledDigraph bundle(const LabeledDigraph& d, const VertexSet& x,
                             const std::map<VertexId, int>& chi) {
  for (VertexId v : x) {
    auto it = chi.find(v);
    if (it == chi.end()) throw std::invalid_argument("bundle labeling missing a vertex of X");
    if (it->second < 0 || it->second >= d.ell()) throw std::out_of_range("bundle label out of range");
  }
  LabeledDigraph out = d;
  for (VertexId x1 : x) {
    for (VertexId x2 : x) {
      if (x1 == x2) continue;
      Permutation pi = Permutation::transposition(d.ell(), chi.at(x1), chi.at(x2));
      out.add_arc_if_absent(x1, x2, pi);
    }
  }
  return out;
}

}  // namespace cwc
