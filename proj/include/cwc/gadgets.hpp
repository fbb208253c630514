// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwc/parity_instance.hpp"
#include "cwc/psi.hpp"

namespace cwc {

// Role names use plain ASCII renderings of the construction's symbols:
//   forward clock: x, y, r0..rn, p1..pn, b0..bn, a1..an, rhat0..rhatn,
//                  bhat0..bhatn, that0..that{n-1}      (that_s = t[s, n-s-1])
//   reverse clock: z, y and the primed family r'0.., p'1.., bhat'0..,
//                  that'1..that'n                      (that'_s = t[s, n-s+1])
//   double clock:  union of the two, sharing y
//   synchronizer:  x, y, z; hands r/p (H), rt/pt (H~), r'/p' (H'),
//                  rt'/pt' (H~'), interior g{i}_{j} with i, j in [1, n]
enum class GadgetKind { ForwardClock, ReverseClock, DoubleClock, Synchronizer };

struct GadgetHandle {
  GadgetKind kind = GadgetKind::ForwardClock;
  int n = 0;
  ParityInstance instance;
  std::map<std::string, VertexId> role_index;
  std::set<std::pair<int, int>> sync_pairs;  // the index set I, synchronizers only

  VertexId role(const std::string& name) const {
    auto it = role_index.find(name);
    if (it == role_index.end()) throw std::out_of_range("unknown gadget role " + name);
    return it->second;
  }
};

namespace detail {

// Mutable instance under construction; gadget builders append into one arena
// so that shared vertices (x, y, z, identified hands) keep a single id.
struct GadgetArena {
  std::vector<long long> weights;
  std::vector<std::tuple<VertexId, VertexId, int>> arcs;

  VertexId add_vertex(long long weight) {
    weights.push_back(weight);
    return static_cast<VertexId>(weights.size()) - 1;
  }
  void add_arc(VertexId u, VertexId v, int label) { arcs.push_back({u, v, label}); }

  ParityInstance finish(long long budget) const {
    ParityInstance inst;
    inst.graph = Digraph(static_cast<int>(weights.size()));
    for (auto [u, v, l] : arcs) {
      inst.graph.add_arc(u, v);
      inst.arc_label.push_back(l);
    }
    inst.weight = weights;
    inst.budget = budget;
    validate_parity(inst);
    return inst;
  }
};

struct ClockRoles {
  std::map<std::string, VertexId> roles;
  VertexId at(const std::string& name) const { return roles.at(name); }
};

inline std::string idx(const std::string& base, int i) { return base + std::to_string(i); }

// Red/blue hand: path pre, mid1, post1, mid2, ... of 2n+1 vertices. Vertex
// roles come from the caller; reused ids (hand identification) are honored.
inline void build_hand(GadgetArena& arena, ClockRoles& out, const std::string& node_base,
                       const std::string& mid_base, int n, long long node_weight, long long mid_weight,
                       const std::vector<VertexId>* shared_path) {
  for (int i = 0; i <= n; ++i) {
    VertexId v = shared_path ? (*shared_path)[static_cast<size_t>(2 * i)] : arena.add_vertex(node_weight);
    out.roles[idx(node_base, i)] = v;
  }
  for (int i = 1; i <= n; ++i) {
    VertexId v = shared_path ? (*shared_path)[static_cast<size_t>(2 * i - 1)] : arena.add_vertex(mid_weight);
    out.roles[idx(mid_base, i)] = v;
  }
  if (shared_path) return;  // arcs already exist in the shared hand
  for (int i = 1; i <= n; ++i) {
    arena.add_arc(out.at(idx(node_base, i - 1)), out.at(idx(mid_base, i)), 0);
    arena.add_arc(out.at(idx(mid_base, i)), out.at(idx(node_base, i)), 0);
  }
}

// heavy = 2k+1
inline ClockRoles build_forward_clock(GadgetArena& arena, int n, long long heavy, VertexId shared_x,
                                      VertexId shared_y) {
  ClockRoles c;
  VertexId x = shared_x >= 0 ? shared_x : arena.add_vertex(heavy);
  VertexId y = shared_y >= 0 ? shared_y : arena.add_vertex(heavy);
  c.roles["x"] = x;
  c.roles["y"] = y;
  for (int i = 0; i <= n; ++i) c.roles[idx("rhat", i)] = arena.add_vertex(heavy);
  for (int i = 0; i <= n; ++i) c.roles[idx("bhat", i)] = arena.add_vertex(heavy);
  for (int s = 0; s <= n - 1; ++s) c.roles[idx("that", s)] = arena.add_vertex(10);
  build_hand(arena, c, "r", "p", n, heavy, 10, nullptr);
  build_hand(arena, c, "b", "a", n, heavy, 10, nullptr);

  // face
  arena.add_arc(x, c.at(idx("rhat", n)), 1);
  arena.add_arc(c.at(idx("rhat", n)), x, 1);
  arena.add_arc(x, c.at(idx("bhat", n)), 0);
  arena.add_arc(c.at(idx("bhat", n)), x, 0);
  for (int i = 0; i <= n; ++i) {
    arena.add_arc(c.at(idx("bhat", i)), c.at(idx("rhat", n - i)), 0);
    arena.add_arc(c.at(idx("rhat", n - i)), c.at(idx("bhat", i)), 0);
  }
  for (int s = 0; s <= n - 1; ++s) {
    arena.add_arc(c.at(idx("rhat", s)), c.at(idx("that", s)), 0);
    arena.add_arc(c.at(idx("that", s)), c.at(idx("rhat", s)), 0);
    arena.add_arc(c.at(idx("bhat", n - s - 1)), c.at(idx("that", s)), 0);
    arena.add_arc(c.at(idx("that", s)), c.at(idx("bhat", n - s - 1)), 0);
  }
  // attach hands
  arena.add_arc(x, c.at("r0"), 0);
  arena.add_arc(x, c.at("b0"), 0);
  for (int i = 0; i <= n; ++i) {
    arena.add_arc(c.at(idx("r", i)), c.at(idx("rhat", i)), 0);
    arena.add_arc(c.at(idx("b", i)), c.at(idx("bhat", i)), 1);
  }
  arena.add_arc(c.at(idx("r", n)), y, 0);
  arena.add_arc(c.at(idx("b", n)), y, 0);
  arena.add_arc(y, x, 1);
  return c;
}

inline ClockRoles build_reverse_clock(GadgetArena& arena, int n, long long heavy, VertexId shared_z,
                                      VertexId shared_y) {
  ClockRoles c;
  VertexId z = shared_z >= 0 ? shared_z : arena.add_vertex(heavy);
  VertexId y = shared_y >= 0 ? shared_y : arena.add_vertex(heavy);
  c.roles["z"] = z;
  c.roles["y"] = y;
  for (int i = 0; i <= n; ++i) c.roles[idx("rhat'", i)] = arena.add_vertex(heavy);
  for (int i = 0; i <= n; ++i) c.roles[idx("bhat'", i)] = arena.add_vertex(heavy);
  for (int s = 1; s <= n; ++s) c.roles[idx("that'", s)] = arena.add_vertex(10);
  build_hand(arena, c, "r'", "p'", n, heavy, 10, nullptr);
  build_hand(arena, c, "b'", "a'", n, heavy, 10, nullptr);

  arena.add_arc(z, c.at("rhat'0"), 1);
  arena.add_arc(c.at("rhat'0"), z, 1);
  arena.add_arc(z, c.at("bhat'0"), 0);
  arena.add_arc(c.at("bhat'0"), z, 0);
  for (int i = 0; i <= n; ++i) {
    arena.add_arc(c.at(idx("bhat'", i)), c.at(idx("rhat'", n - i)), 0);
    arena.add_arc(c.at(idx("rhat'", n - i)), c.at(idx("bhat'", i)), 0);
  }
  for (int s = 1; s <= n; ++s) {
    arena.add_arc(c.at(idx("rhat'", s)), c.at(idx("that'", s)), 0);
    arena.add_arc(c.at(idx("that'", s)), c.at(idx("rhat'", s)), 0);
    arena.add_arc(c.at(idx("bhat'", n - s + 1)), c.at(idx("that'", s)), 0);
    arena.add_arc(c.at(idx("that'", s)), c.at(idx("bhat'", n - s + 1)), 0);
  }
  arena.add_arc(c.at(idx("r'", n)), z, 0);
  arena.add_arc(c.at(idx("b'", n)), z, 0);
  for (int i = 0; i <= n; ++i) {
    arena.add_arc(c.at(idx("rhat'", i)), c.at(idx("r'", i)), 0);
    arena.add_arc(c.at(idx("bhat'", i)), c.at(idx("b'", i)), 1);
  }
  arena.add_arc(y, c.at("r'0"), 0);
  arena.add_arc(y, c.at("b'0"), 0);
  arena.add_arc(z, y, 1);
  return c;
}

inline ClockRoles build_double_clock(GadgetArena& arena, int n, long long heavy, VertexId shared_x,
                                     VertexId shared_y, VertexId shared_z) {
  ClockRoles fwd = build_forward_clock(arena, n, heavy, shared_x, shared_y);
  ClockRoles rev = build_reverse_clock(arena, n, heavy, shared_z, fwd.at("y"));
  ClockRoles all = fwd;
  for (const auto& [name, v] : rev.roles) all.roles[name] = v;
  for (int i = 0; i <= n; ++i) {
    arena.add_arc(all.at(idx("r'", i)), all.at(idx("r", i)), 1);
    arena.add_arc(all.at(idx("b'", i)), all.at(idx("b", i)), 1);
  }
  return all;
}

struct SyncHandIds {
  // path order pre, mid, post, ...: 2n+1 ids per hand
  std::vector<VertexId> h, ht, hp, htp;
};

inline std::vector<VertexId> hand_path_ids(const ClockRoles& roles, const std::string& node_base,
                                           const std::string& mid_base, int n) {
  std::vector<VertexId> out;
  for (int i = 0; i <= n; ++i) {
    out.push_back(roles.at(idx(node_base, i)));
    if (i < n) out.push_back(roles.at(idx(mid_base, i + 1)));
  }
  return out;
}

inline ClockRoles build_synchronizer(GadgetArena& arena, int n, long long heavy,
                                     const std::set<std::pair<int, int>>& pairs, VertexId shared_x,
                                     VertexId shared_y, VertexId shared_z, const SyncHandIds* shared_hands) {
  ClockRoles s;
  s.roles["x"] = shared_x >= 0 ? shared_x : arena.add_vertex(heavy);
  s.roles["y"] = shared_y >= 0 ? shared_y : arena.add_vertex(heavy);
  s.roles["z"] = shared_z >= 0 ? shared_z : arena.add_vertex(heavy);
  build_hand(arena, s, "r", "p", n, 10, 10, shared_hands ? &shared_hands->h : nullptr);
  build_hand(arena, s, "rt", "pt", n, 10, 10, shared_hands ? &shared_hands->ht : nullptr);
  build_hand(arena, s, "r'", "p'", n, 10, 10, shared_hands ? &shared_hands->hp : nullptr);
  build_hand(arena, s, "rt'", "pt'", n, 10, 10, shared_hands ? &shared_hands->htp : nullptr);
  if (!shared_hands) {
    arena.add_arc(s.at("x"), s.at("r0"), 0);
    arena.add_arc(s.at("x"), s.at("rt0"), 0);
    arena.add_arc(s.at(idx("r", n)), s.at("y"), 0);
    arena.add_arc(s.at(idx("rt", n)), s.at("y"), 0);
    arena.add_arc(s.at("y"), s.at("r'0"), 0);
    arena.add_arc(s.at("y"), s.at("rt'0"), 0);
    arena.add_arc(s.at(idx("r'", n)), s.at("z"), 0);
    arena.add_arc(s.at(idx("rt'", n)), s.at("z"), 0);
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      long long w = pairs.count({i, j}) ? 1 : heavy;
      s.roles["g" + std::to_string(i) + "_" + std::to_string(j)] = arena.add_vertex(w);
    }
  }
  auto g = [&](int i, int j) { return s.at("g" + std::to_string(i) + "_" + std::to_string(j)); };
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i + 1 <= n) arena.add_arc(g(i + 1, j), g(i, j), 0);
      if (j + 1 <= n) arena.add_arc(g(i, j + 1), g(i, j), 0);
    }
  }
  for (int i = 1; i <= n; ++i) {
    arena.add_arc(g(i, 1), s.at(idx("r", i)), 1);           // (g_{i,1}, post(p_i))
    arena.add_arc(s.at(idx("rt'", i - 1)), g(n, i), 1);     // (pre(pt'_i), g_{n,i})
    arena.add_arc(g(1, i), s.at(idx("rt", i)), 0);          // (g_{1,i}, post(pt_i))
    arena.add_arc(s.at(idx("r'", i - 1)), g(i, n), 0);      // (pre(p'_i), g_{i,n})
  }
  return s;
}

inline void require_gadget_params(int n, long long k) {
  if (n < 2) throw std::invalid_argument("clock size n must be at least 2");
  if (k < 100) throw std::invalid_argument("gadget budget k must be at least 100");
}

}  // namespace detail

inline GadgetHandle forward_clock(int n, long long k) {
  detail::require_gadget_params(n, k);
  detail::GadgetArena arena;
  detail::ClockRoles roles = detail::build_forward_clock(arena, n, 2 * k + 1, -1, -1);
  GadgetHandle h;
  h.kind = GadgetKind::ForwardClock;
  h.n = n;
  h.instance = arena.finish(k);
  h.role_index = roles.roles;
  return h;
}

inline GadgetHandle reverse_clock(int n, long long k) {
  detail::require_gadget_params(n, k);
  detail::GadgetArena arena;
  detail::ClockRoles roles = detail::build_reverse_clock(arena, n, 2 * k + 1, -1, -1);
  GadgetHandle h;
  h.kind = GadgetKind::ReverseClock;
  h.n = n;
  h.instance = arena.finish(k);
  h.role_index = roles.roles;
  return h;
}

inline GadgetHandle double_clock(int n, long long k) {
  detail::require_gadget_params(n, k);
  detail::GadgetArena arena;
  detail::ClockRoles roles = detail::build_double_clock(arena, n, 2 * k + 1, -1, -1, -1);
  GadgetHandle h;
  h.kind = GadgetKind::DoubleClock;
  h.n = n;
  h.instance = arena.finish(k);
  h.role_index = roles.roles;
  return h;
}

inline GadgetHandle synchronizer(int n, long long k, const std::set<std::pair<int, int>>& pairs) {
  detail::require_gadget_params(n, k);
  for (auto [i, j] : pairs) {
    if (i < 1 || i > n || j < 1 || j > n) throw std::out_of_range("synchronizer pair outside [n]^2");
  }
  detail::GadgetArena arena;
  detail::ClockRoles roles = detail::build_synchronizer(arena, n, 2 * k + 1, pairs, -1, -1, -1, nullptr);
  GadgetHandle h;
  h.kind = GadgetKind::Synchronizer;
  h.n = n;
  h.instance = arena.finish(k);
  h.role_index = roles.roles;
  h.sync_pairs = pairs;
  return h;
}

namespace detail {

inline VertexSet forward_precise_cut(const GadgetHandle& h, int i, int j, int s) {
  return VertexSet{h.role(idx("p", i)), h.role(idx("a", j)), h.role(idx("that", s))};
}

inline VertexSet reverse_precise_cut(const GadgetHandle& h, int i, int j, int s) {
  return VertexSet{h.role(idx("p'", i)), h.role(idx("a'", j)), h.role(idx("that'", s))};
}

}  // namespace detail

inline VertexSet double_clock_precise_cut(const GadgetHandle& h, int i) {
  if (h.kind != GadgetKind::DoubleClock) throw std::invalid_argument("not a double clock");
  return VertexSet{h.role(detail::idx("p", i)),      h.role(detail::idx("a", h.n - i + 1)),
                   h.role(detail::idx("p'", i)),     h.role(detail::idx("a'", h.n - i + 1)),
                   h.role(detail::idx("that", i - 1)), h.role(detail::idx("that'", i))};
}

inline VertexSet sync_precise_cut(const GadgetHandle& h, int i, int j) {
  if (h.kind != GadgetKind::Synchronizer) throw std::invalid_argument("not a synchronizer");
  return VertexSet{h.role(detail::idx("p", i)), h.role(detail::idx("p'", i)), h.role(detail::idx("pt", j)),
                   h.role(detail::idx("pt'", j)), h.role("g" + std::to_string(i) + "_" + std::to_string(j))};
}

// All precise cuts of the gadget, in index order.
inline std::vector<VertexSet> enumerate_precise_cuts(const GadgetHandle& h) {
  std::vector<VertexSet> out;
  const int n = h.n;
  switch (h.kind) {
    case GadgetKind::ForwardClock:
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int s = 0; s <= n - 1; ++s)
            if (i - 1 <= s && j <= n - s) out.push_back(detail::forward_precise_cut(h, i, j, s));
      break;
    case GadgetKind::ReverseClock:
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int s = 1; s <= n; ++s)
            if (s <= i && n - s + 1 <= j) out.push_back(detail::reverse_precise_cut(h, i, j, s));
      break;
    case GadgetKind::DoubleClock:
      for (int i = 1; i <= n; ++i) out.push_back(double_clock_precise_cut(h, i));
      break;
    case GadgetKind::Synchronizer:
      for (auto [i, j] : h.sync_pairs) out.push_back(sync_precise_cut(h, i, j));
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool cuts_precisely(const GadgetHandle& h, const VertexSet& x) {
  for (const VertexSet& cut : enumerate_precise_cuts(h)) {
    if (cut == x) return true;
  }
  return false;
}

// Synchronizers only: X contains some quadruple {p_i, p'_i, pt_j, pt'_j} but
// is not a precise cut.
inline bool cuts_roughly(const GadgetHandle& h, const VertexSet& x) {
  if (h.kind != GadgetKind::Synchronizer) throw std::invalid_argument("rough cuts are defined for synchronizers");
  if (cuts_precisely(h, x)) return false;
  for (int i = 1; i <= h.n; ++i) {
    for (int j = 1; j <= h.n; ++j) {
      if (x.contains(h.role(detail::idx("p", i))) && x.contains(h.role(detail::idx("p'", i))) &&
          x.contains(h.role(detail::idx("pt", j))) && x.contains(h.role(detail::idx("pt'", j)))) {
        return true;
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Annotation reduction: A-DOCT -> plain DOCT.

struct DoctInstance {
  Digraph graph;
  int budget = 0;
};

// red(D, k, l, w): w(v) interchangeable copies q^i_v of every vertex,
// ceil(alpha*k)+1 copies p^i_a bridging every 0-labeled arc, direct copy
// arcs for 1-labeled arcs.
inline DoctInstance adoct_to_doct(const ParityInstance& inst, double alpha = 1.0) {
  validate_parity(inst);
  if (alpha < 1.0) throw std::invalid_argument("alpha must be at least 1");
  const long long p_copies = static_cast<long long>(std::ceil(alpha * static_cast<double>(inst.budget) - 1e-9)) + 1;

  std::vector<long long> q_offset(static_cast<size_t>(inst.graph.vertex_count()) + 1, 0);
  for (int v = 0; v < inst.graph.vertex_count(); ++v) {
    q_offset[static_cast<size_t>(v) + 1] = q_offset[static_cast<size_t>(v)] + inst.weight[static_cast<size_t>(v)];
  }
  const long long q_total = q_offset.back();

  std::vector<long long> p_offset;
  long long p_total = 0;
  for (int a = 0; a < inst.graph.arc_count(); ++a) {
    p_offset.push_back(q_total + p_total);
    if (inst.arc_label[static_cast<size_t>(a)] == 0) p_total += p_copies;
  }

  DoctInstance out;
  out.budget = static_cast<int>(inst.budget);
  out.graph = Digraph(static_cast<int>(q_total + p_total));
  auto q = [&](VertexId v, long long i) { return static_cast<VertexId>(q_offset[static_cast<size_t>(v)] + i); };
  for (int a = 0; a < inst.graph.arc_count(); ++a) {
    const Arc& arc = inst.graph.arc(a);
    const long long wu = inst.weight[static_cast<size_t>(arc.tail)];
    const long long wv = inst.weight[static_cast<size_t>(arc.head)];
    if (inst.arc_label[static_cast<size_t>(a)] == 1) {
      for (long long i = 0; i < wu; ++i)
        for (long long j = 0; j < wv; ++j) out.graph.add_arc(q(arc.tail, i), q(arc.head, j));
    } else {
      for (long long c = 0; c < p_copies; ++c) {
        VertexId p = static_cast<VertexId>(p_offset[static_cast<size_t>(a)] + c);
        for (long long i = 0; i < wu; ++i) out.graph.add_arc(q(arc.tail, i), p);
        for (long long j = 0; j < wv; ++j) out.graph.add_arc(p, q(arc.head, j));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Arc-DOCT reductions.

// Subdivide every arc and split every vertex into in/out halves joined by an
// arc; arc deletions in the result correspond to vertex deletions in the
// source. Vertex u maps to halves 2u (in) and 2u+1 (out); arc a maps to
// subdivision vertex 2n+a.
inline Digraph doct_to_arcdoct(const Digraph& g) {
  Digraph out(2 * g.vertex_count() + g.arc_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) out.add_arc(2 * u, 2 * u + 1);
  for (int a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    VertexId s = 2 * g.vertex_count() + a;
    out.add_arc(2 * arc.tail + 1, s);
    out.add_arc(s, 2 * arc.head);
  }
  return out;
}

// Subdivide every arc twice and replace every original vertex by k+2
// interchangeable copies, which no budget-k solution can delete entirely;
// deleting a subdivision vertex plays the role of deleting the arc.
inline Digraph arcdoct_to_doct(const Digraph& g, int k) {
  if (k < 0) throw std::invalid_argument("negative budget");
  const int copies = k + 2;
  const int base = g.vertex_count() * copies;
  Digraph out(base + 2 * g.arc_count());
  for (int a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    VertexId s1 = base + 2 * a;
    VertexId s2 = base + 2 * a + 1;
    for (int c = 0; c < copies; ++c) out.add_arc(arc.tail * copies + c, s1);
    out.add_arc(s1, s2);
    for (int c = 0; c < copies; ++c) out.add_arc(s2, arc.head * copies + c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// PSI -> A-DOCT.

struct PsiReduction {
  ParityInstance instance;
  PsiInstance normalized;      // isolated vertices dropped, classes padded
  int class_size = 0;          // n
  long long budget = 0;        // k = 60|V(G)| + |E(G)|
  std::vector<GadgetHandle> clocks;                // one double clock per G vertex
  std::vector<GadgetHandle> synchronizers;         // one per G edge (g < g')
  std::vector<std::pair<int, int>> sync_edges;     // matching G edges
  std::vector<std::vector<int>> classes;           // classes[g][i-1] = H vertex v^g_i
  std::vector<std::string> warnings;
};

inline PsiReduction psi_to_adoct(const PsiInstance& input) {
  validate_psi(input);
  // Normalization: an isolated pattern vertex with an empty class makes the
  // instance trivially negative; other isolated vertices are dropped along
  // with their H vertices, then classes are padded to a common size.
  std::vector<int> deg = input.g.degrees();
  std::vector<int> keep_map(static_cast<size_t>(input.g.vertex_count), -1);
  int kept = 0;
  for (int gv = 0; gv < input.g.vertex_count; ++gv) {
    bool has_class = false;
    for (int c : input.col) {
      if (c == gv) {
        has_class = true;
        break;
      }
    }
    if (deg[static_cast<size_t>(gv)] == 0) {
      if (!has_class) throw std::invalid_argument("isolated pattern vertex with empty class: trivial no-instance");
      continue;
    }
    keep_map[static_cast<size_t>(gv)] = kept++;
  }

  PsiReduction red;
  red.normalized.g.vertex_count = kept;
  for (auto [a, b] : input.g.edges) {
    red.normalized.g.add_edge(keep_map[static_cast<size_t>(a)], keep_map[static_cast<size_t>(b)]);
  }
  std::vector<std::vector<int>> kept_members(static_cast<size_t>(kept));
  std::vector<int> h_map(static_cast<size_t>(input.h.vertex_count), -1);
  int new_h = 0;
  for (int hv = 0; hv < input.h.vertex_count; ++hv) {
    int gv = keep_map[static_cast<size_t>(input.col[static_cast<size_t>(hv)])];
    if (gv < 0) continue;
    h_map[static_cast<size_t>(hv)] = new_h++;
    red.normalized.col.push_back(gv);
    kept_members[static_cast<size_t>(gv)].push_back(new_h - 1);
  }
  size_t n = 1;
  for (const auto& cls : kept_members) n = std::max(n, cls.size());
  for (int gv = 0; gv < kept; ++gv) {
    while (kept_members[static_cast<size_t>(gv)].size() < n) {
      kept_members[static_cast<size_t>(gv)].push_back(new_h++);
      red.normalized.col.push_back(gv);
    }
  }
  red.normalized.h.vertex_count = new_h;
  for (auto [a, b] : input.h.edges) {
    int na = h_map[static_cast<size_t>(a)];
    int nb = h_map[static_cast<size_t>(b)];
    if (na >= 0 && nb >= 0) red.normalized.h.add_edge(na, nb);
  }
  red.classes = kept_members;
  red.class_size = static_cast<int>(n);

  const int gcount = red.normalized.g.vertex_count;
  const long long ecount = static_cast<long long>(red.normalized.g.edges.size());
  red.budget = 60ll * gcount + ecount;
  if (gcount == 0) {
    red.instance.budget = 0;
    return red;
  }
  if (red.budget < 100) throw std::invalid_argument("reduction budget below 100; pattern too small");
  if (gcount < 100) {
    red.warnings.push_back("pattern has fewer than 100 vertices; the hardness argument assumes |V(G)| >= 100");
  }
  if (n < 2) {
    red.warnings.push_back("class size below 2; clocks are generated with n = 2");
  }
  const int cn = std::max<int>(2, static_cast<int>(n));
  const long long heavy = 2 * red.budget + 1;

  detail::GadgetArena arena;
  VertexId x = arena.add_vertex(heavy);
  VertexId y = arena.add_vertex(heavy);
  VertexId z = arena.add_vertex(heavy);
  std::vector<detail::ClockRoles> clock_roles;
  for (int gv = 0; gv < gcount; ++gv) {
    clock_roles.push_back(detail::build_double_clock(arena, cn, heavy, x, y, z));
  }

  std::vector<std::pair<int, int>> edges = red.normalized.g.edges;
  std::sort(edges.begin(), edges.end());
  std::vector<detail::ClockRoles> sync_roles;
  std::vector<std::set<std::pair<int, int>>> sync_pairs;
  for (auto [gv, gw] : edges) {
    std::set<std::pair<int, int>> pairs;
    for (int i = 1; i <= static_cast<int>(n); ++i) {
      for (int j = 1; j <= static_cast<int>(n); ++j) {
        if (red.normalized.h.has_edge(kept_members[static_cast<size_t>(gv)][static_cast<size_t>(i - 1)],
                                      kept_members[static_cast<size_t>(gw)][static_cast<size_t>(j - 1)])) {
          pairs.insert({i, j});
        }
      }
    }
    detail::SyncHandIds hands;
    hands.h = detail::hand_path_ids(clock_roles[static_cast<size_t>(gv)], "r", "p", cn);
    hands.hp = detail::hand_path_ids(clock_roles[static_cast<size_t>(gv)], "r'", "p'", cn);
    hands.ht = detail::hand_path_ids(clock_roles[static_cast<size_t>(gw)], "r", "p", cn);
    hands.htp = detail::hand_path_ids(clock_roles[static_cast<size_t>(gw)], "r'", "p'", cn);
    sync_roles.push_back(detail::build_synchronizer(arena, cn, heavy, pairs, x, y, z, &hands));
    sync_pairs.push_back(std::move(pairs));
    red.sync_edges.push_back({gv, gw});
  }

  red.instance = arena.finish(red.budget);
  for (int gv = 0; gv < gcount; ++gv) {
    GadgetHandle h;
    h.kind = GadgetKind::DoubleClock;
    h.n = cn;
    h.instance = red.instance;
    h.role_index = clock_roles[static_cast<size_t>(gv)].roles;
    red.clocks.push_back(std::move(h));
  }
  for (size_t e = 0; e < sync_roles.size(); ++e) {
    GadgetHandle h;
    h.kind = GadgetKind::Synchronizer;
    h.n = cn;
    h.instance = red.instance;
    h.role_index = sync_roles[e].roles;
    h.sync_pairs = sync_pairs[e];
    red.synchronizers.push_back(std::move(h));
  }
  return red;
}

// Lemma direction1's witness: per-vertex precise double-clock cuts plus the
// matching interior cell per edge. Weight is exactly 60|V(G)| + |E(G)|;
// validated with the polynomial odd-cycle detector, never by brute force.
inline VertexSet colorful_mapping_to_cover(const PsiReduction& red, const std::vector<int>& phi) {
  if (!is_colorful_mapping(red.normalized, phi)) throw std::invalid_argument("not a colorful mapping");
  auto index_of = [&](int gv) {
    const auto& cls = red.classes[static_cast<size_t>(gv)];
    for (size_t i = 0; i < cls.size(); ++i) {
      if (cls[i] == phi[static_cast<size_t>(gv)]) return static_cast<int>(i) + 1;
    }
    throw std::logic_error("mapped vertex missing from its class");
  };
  VertexSet cover;
  for (int gv = 0; gv < red.normalized.g.vertex_count; ++gv) {
    cover = set_union(cover, double_clock_precise_cut(red.clocks[static_cast<size_t>(gv)], index_of(gv)));
  }
  for (size_t e = 0; e < red.sync_edges.size(); ++e) {
    auto [gv, gw] = red.sync_edges[e];
    int i = index_of(gv);
    int j = index_of(gw);
    cover.insert(red.synchronizers[e].role("g" + std::to_string(i) + "_" + std::to_string(j)));
  }
  long long expect = 60ll * red.normalized.g.vertex_count + static_cast<long long>(red.normalized.g.edges.size());
  if (weight_of(red.instance, cover) != expect) throw std::logic_error("witness weight mismatch");
  if (has_odd_labeled_cycle(red.instance, cover)) throw std::logic_error("witness fails the odd-cycle check");
  return cover;
}

}  // namespace cwc
