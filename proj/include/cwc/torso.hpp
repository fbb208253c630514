// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cwc/labeled_digraph.hpp"

namespace cwc {

// Permutations realizable by nonempty u->v walks with all internal vertices
// in Z: some pi in perms maps alpha to beta iff such a walk maps alpha to
// beta.
struct RealizableSet {
  VertexId u = -1;
  VertexId v = -1;
  std::vector<Permutation> perms;  // sorted, duplicate-free
};

namespace detail {

// Arcs of the auxiliary digraph Q on {0..ell-1} for every exit target at
// once: exits[v] has (alpha, beta) set iff there is a nonempty u_alpha ->
// v_beta path whose internal lift vertices all lie in Z layers.
inline std::map<VertexId, std::vector<std::pair<int, int>>> z_exit_arcs(const LabeledDigraph& d,
                                                                        const VertexSet& z, VertexId u) {
  const int ell = d.ell();
  auto adj = out_adjacency(d.graph());
  std::map<VertexId, std::vector<std::pair<int, int>>> exits;
  std::vector<char> seen(static_cast<size_t>(d.vertex_count() * ell), 0);
  for (int alpha = 0; alpha < ell; ++alpha) {
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<std::pair<VertexId, int>> queue;  // states inside Z layers
    auto relax = [&](VertexId w, int gamma) {
      for (auto [w2, arc] : adj[static_cast<size_t>(w)]) {
        int gamma2 = d.label(arc).apply(gamma);
        if (z.contains(w2)) {
          size_t id = static_cast<size_t>(w2 * ell + gamma2);
          if (!seen[id]) {
            seen[id] = 1;
            queue.push_back({w2, gamma2});
          }
        } else {
          exits[w2].push_back({alpha, gamma2});
        }
      }
    };
    relax(u, alpha);
    for (size_t qi = 0; qi < queue.size(); ++qi) relax(queue[qi].first, queue[qi].second);
  }
  for (auto& [v, arcs] : exits) {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  }
  return exits;
}

// Permutation corresponding to a cycle cover of Q that contains the arc
// (a, b), found as a perfect matching with that edge forced. Q arising from
// walk labels always admits one: the whole functional graph of the realizing
// walk's label sits inside Q.
inline Permutation cycle_cover_through(int ell, const std::vector<std::pair<int, int>>& q_arcs, int a, int b) {
  std::vector<std::vector<int>> choices(static_cast<size_t>(ell));
  for (auto [x, y] : q_arcs) choices[static_cast<size_t>(x)].push_back(y);
  std::vector<int> match_left(static_cast<size_t>(ell), -1), match_right(static_cast<size_t>(ell), -1);
  match_left[static_cast<size_t>(a)] = b;
  match_right[static_cast<size_t>(b)] = a;

  std::vector<char> visited(static_cast<size_t>(ell), 0);
  auto try_augment = [&](auto&& self, int x) -> bool {
    for (int y : choices[static_cast<size_t>(x)]) {
      if (y == b || visited[static_cast<size_t>(y)]) continue;
      visited[static_cast<size_t>(y)] = 1;
      if (match_right[static_cast<size_t>(y)] == -1 ||
          (match_right[static_cast<size_t>(y)] != a && self(self, match_right[static_cast<size_t>(y)]))) {
        match_left[static_cast<size_t>(x)] = y;
        match_right[static_cast<size_t>(y)] = x;
        return true;
      }
    }
    return false;
  };
  for (int x = 0; x < ell; ++x) {
    if (x == a || match_left[static_cast<size_t>(x)] != -1) continue;
    std::fill(visited.begin(), visited.end(), 0);
    if (!try_augment(try_augment, x)) throw std::logic_error("no cycle cover through a realizable arc");
  }
  return Permutation::from_images(match_left);
}

inline std::vector<Permutation> perms_from_q(int ell, const std::vector<std::pair<int, int>>& q_arcs) {
  std::vector<Permutation> perms;
  for (auto [a, b] : q_arcs) perms.push_back(cycle_cover_through(ell, q_arcs, a, b));
  std::sort(perms.begin(), perms.end());
  perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
  return perms;
}

}  // namespace detail

inline RealizableSet realizable_perms(const LabeledDigraph& d, const VertexSet& z, VertexId u, VertexId v) {
  if (z.contains(u) || z.contains(v)) throw std::invalid_argument("endpoints must avoid Z");
  RealizableSet out;
  out.u = u;
  out.v = v;
  auto exits = detail::z_exit_arcs(d, z, u);
  auto it = exits.find(v);
  if (it != exits.end()) out.perms = detail::perms_from_q(d.ell(), it->second);
  return out;
}

// Deletes Z and adds, per surviving ordered pair (u, v), one arc per
// realizable permutation (cycle-cover representative). Self-loops keep only
// non-identity labels; colorful-walk detection treats them as closed walks of
// length one.
inline LabeledDigraph labeled_torso(const LabeledDigraph& d, const VertexSet& z) {
  LabeledDigraph out(d.vertex_count(), d.ell());
  for (int i = 0; i < d.arc_count(); ++i) {
    const Arc& a = d.arc(i);
    if (!z.contains(a.tail) && !z.contains(a.head)) out.add_arc_if_absent(a.tail, a.head, d.label(i));
  }
  std::vector<char> relevant(static_cast<size_t>(d.vertex_count()), 0);
  for (const Arc& a : d.graph().arcs()) {
    relevant[static_cast<size_t>(a.tail)] = 1;
    relevant[static_cast<size_t>(a.head)] = 1;
  }
  for (VertexId u = 0; u < d.vertex_count(); ++u) {
    if (z.contains(u) || !relevant[static_cast<size_t>(u)]) continue;
    auto exits = detail::z_exit_arcs(d, z, u);
    for (const auto& [v, q_arcs] : exits) {
      for (const Permutation& pi : detail::perms_from_q(d.ell(), q_arcs)) {
        if (u == v && pi.is_identity()) continue;
        out.add_arc_if_absent(u, v, pi);
      }
    }
  }
  return out;
}

}  // namespace cwc
