// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace cwc {

struct UndirectedGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // endpoints ordered low-high

  void add_edge(int a, int b) {
    if (a == b) throw std::invalid_argument("self-edge");
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count) throw std::out_of_range("edge endpoint out of range");
    auto e = std::minmax(a, b);
    if (std::find(edges.begin(), edges.end(), std::make_pair(e.first, e.second)) != edges.end()) {
      throw std::invalid_argument("duplicate edge");
    }
    edges.push_back({e.first, e.second});
  }

  bool has_edge(int a, int b) const {
    auto e = std::minmax(a, b);
    return std::find(edges.begin(), edges.end(), std::make_pair(e.first, e.second)) != edges.end();
  }

  std::vector<int> degrees() const {
    std::vector<int> deg(static_cast<size_t>(vertex_count), 0);
    for (auto [a, b] : edges) {
      ++deg[static_cast<size_t>(a)];
      ++deg[static_cast<size_t>(b)];
    }
    return deg;
  }
};

// Partitioned Subgraph Isomorphism: pattern G (max degree 3), host H,
// coloring col : V(H) -> V(G).
struct PsiInstance {
  UndirectedGraph h;
  UndirectedGraph g;
  std::vector<int> col;  // size |V(H)|, values in [0, |V(G)|)
};

inline void validate_psi(const PsiInstance& inst) {
  if (static_cast<int>(inst.col.size()) != inst.h.vertex_count) throw std::invalid_argument("coloring size mismatch");
  for (int c : inst.col) {
    if (c < 0 || c >= inst.g.vertex_count) throw std::out_of_range("color out of range");
  }
  for (int d : inst.g.degrees()) {
    if (d > 3) throw std::invalid_argument("pattern graph has a vertex of degree > 3");
  }
}

// col(phi(g)) == g for all g, phi injective, and G-edges map to H-edges.
inline bool is_colorful_mapping(const PsiInstance& inst, const std::vector<int>& phi) {
  if (static_cast<int>(phi.size()) != inst.g.vertex_count) return false;
  for (int gv = 0; gv < inst.g.vertex_count; ++gv) {
    int hv = phi[static_cast<size_t>(gv)];
    if (hv < 0 || hv >= inst.h.vertex_count) return false;
    if (inst.col[static_cast<size_t>(hv)] != gv) return false;
  }
  for (auto [a, b] : inst.g.edges) {
    if (!inst.h.has_edge(phi[static_cast<size_t>(a)], phi[static_cast<size_t>(b)])) return false;
  }
  return true;
}

}  // namespace cwc
