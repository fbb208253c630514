#pragma once

#include <vector>

#include "cwc/digraph.hpp"
#include "cwc/labeled_digraph.hpp"
#include "cwc/rng.hpp"

namespace cwc::testing {

inline Digraph random_digraph(Rng& rng, int n, int max_arcs) {
  Digraph g(n);
  int arcs = static_cast<int>(rng.below(static_cast<uint64_t>(max_arcs) + 1));
  for (int i = 0; i < arcs; ++i) {
    int u = rng.range(0, n - 1);
    int v = rng.range(0, n - 1);
    if (u != v) g.add_arc(u, v);
  }
  return g;
}

inline Permutation random_permutation(Rng& rng, int ell) {
  std::vector<int> img(static_cast<size_t>(ell));
  for (int i = 0; i < ell; ++i) img[static_cast<size_t>(i)] = i;
  for (int i = ell - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(static_cast<uint64_t>(i) + 1));
    std::swap(img[static_cast<size_t>(i)], img[static_cast<size_t>(j)]);
  }
  return Permutation::from_images(img);
}

inline LabeledDigraph random_labeled(Rng& rng, int n, int ell, int max_arcs) {
  LabeledDigraph d(n, ell);
  int arcs = static_cast<int>(rng.below(static_cast<uint64_t>(max_arcs) + 1));
  for (int i = 0; i < arcs; ++i) {
    int u = rng.range(0, n - 1);
    int v = rng.range(0, n - 1);
    if (u == v) continue;
    d.add_arc_if_absent(u, v, random_permutation(rng, ell));
  }
  return d;
}

// random labeled digraph made strongly connected with a spanning cycle
inline LabeledDigraph random_strongly_connected(Rng& rng, int n, int ell, int extra_arcs) {
  LabeledDigraph d(n, ell);
  for (int v = 0; v < n; ++v) d.add_arc_if_absent(v, (v + 1) % n, random_permutation(rng, ell));
  for (int i = 0; i < extra_arcs; ++i) {
    int u = rng.range(0, n - 1);
    int v = rng.range(0, n - 1);
    if (u == v) continue;
    d.add_arc_if_absent(u, v, random_permutation(rng, ell));
  }
  return d;
}

inline LabeledDigraph random_symmetric(Rng& rng, int n, int ell, int max_arcs) {
  return doubling(random_labeled(rng, n, ell, max_arcs));
}

// naive reachability oracle (adjacency-matrix closure)
inline std::vector<char> naive_reach(const Digraph& g, VertexId source) {
  const int n = g.vertex_count();
  std::vector<std::vector<char>> adj(static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(n), 0));
  for (const Arc& a : g.arcs()) adj[static_cast<size_t>(a.tail)][static_cast<size_t>(a.head)] = 1;
  std::vector<char> reach(static_cast<size_t>(n), 0);
  reach[static_cast<size_t>(source)] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int u = 0; u < n; ++u) {
      if (!reach[static_cast<size_t>(u)]) continue;
      for (int v = 0; v < n; ++v) {
        if (adj[static_cast<size_t>(u)][static_cast<size_t>(v)] && !reach[static_cast<size_t>(v)]) {
          reach[static_cast<size_t>(v)] = 1;
          changed = true;
        }
      }
    }
  }
  return reach;
}

}  // namespace cwc::testing
