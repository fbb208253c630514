// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cwc/labeled_digraph.hpp"
#include "cwc/parity_instance.hpp"
#include "cwc/psi.hpp"
#include "cwc/separators.hpp"

namespace cwc {

// Ground-truth result of an exhaustive search. `witnesses` holds every
// optimum-achieving set, capped.
struct WeightedCoverResult {
  bool found = false;
  long long min_weight = 0;
  std::vector<VertexSet> witnesses;
  bool truncated = false;
};

inline constexpr size_t kWitnessCap = 100000;

namespace detail {

inline void combinations(int n, int size, const std::function<bool(const VertexSet&)>& visit) {
  std::vector<VertexId> current;
  auto rec = [&](auto&& self, int start) -> bool {
    if (static_cast<int>(current.size()) == size) return visit(VertexSet(current));
    for (int v = start; v < n; ++v) {
      if (n - v < size - static_cast<int>(current.size())) break;
      current.push_back(v);
      if (!self(self, v + 1)) return false;
      current.pop_back();
    }
    return true;
  };
  rec(rec, 0);
}

}  // namespace detail

// Minimum-cardinality colorful walk cover of size <= max_size by direct
// enumeration in increasing size.
inline WeightedCoverResult brute_cwc(const LabeledDigraph& d, int max_size) {
  WeightedCoverResult out;
  for (int size = 0; size <= std::min(max_size, d.vertex_count()); ++size) {
    detail::combinations(d.vertex_count(), size, [&](const VertexSet& s) {
      if (is_colorful_walk_cover(d, s)) {
        out.found = true;
        out.min_weight = size;
        if (out.witnesses.size() < kWitnessCap) out.witnesses.push_back(s);
        else out.truncated = true;
      }
      return true;
    });
    if (out.found) break;
  }
  return out;
}

// Every directed-odd-cycle transversal the certificate-guided enumeration
// reaches with weight <= max_weight. Contains all inclusion-minimal ones;
// each set appears once. Branches on the vertices of a shortest odd closed
// walk, forbidding earlier siblings, which is exhaustive because every
// transversal meets every odd closed walk's vertex set.
inline std::vector<VertexSet> minimal_odd_transversals(const ParityInstance& inst, long long max_weight) {
  std::vector<VertexSet> out;
  auto rec = [&](auto&& self, VertexSet chosen, long long used, VertexSet forbidden) -> void {
    auto walk = find_odd_closed_walk(inst.graph, inst.arc_label, chosen);
    if (!walk) {
      out.push_back(chosen);
      return;
    }
    std::vector<VertexId> branch;
    for (VertexId v : *walk) {
      if (!chosen.contains(v) && std::find(branch.begin(), branch.end(), v) == branch.end()) branch.push_back(v);
    }
    VertexSet local_forbidden = forbidden;
    for (VertexId v : branch) {
      if (local_forbidden.contains(v)) continue;
      long long w = used + inst.weight[static_cast<size_t>(v)];
      if (w <= max_weight) {
        VertexSet next = chosen;
        next.insert(v);
        self(self, std::move(next), w, local_forbidden);
      }
      local_forbidden.insert(v);
    }
  };
  rec(rec, {}, 0, {});
  return out;
}

// Minimum total weight of an odd-label-cycle transversal, capped. Search is
// confined to vertices of weight <= max_weight by construction (heavier
// vertices can never enter a set within the cap).
inline WeightedCoverResult brute_adoct(const ParityInstance& inst, long long max_weight) {
  WeightedCoverResult out;
  for (const VertexSet& s : minimal_odd_transversals(inst, max_weight)) {
    long long w = weight_of(inst, s);
    if (!out.found || w < out.min_weight) {
      out.found = true;
      out.min_weight = w;
      out.witnesses.clear();
      out.truncated = false;
    }
    if (w == out.min_weight && out.found) {
      if (out.witnesses.size() < kWitnessCap) out.witnesses.push_back(s);
      else out.truncated = true;
    }
  }
  std::sort(out.witnesses.begin(), out.witnesses.end());
  return out;
}

inline bool is_skew_separator(const Digraph& g, const SkewFamily& fam, const VertexSet& s) {
  for (const VertexSet& part : fam.parts) {
    if (!disjoint(part, s)) return false;
  }
  Digraph residual = g.without_vertices(s);
  for (size_t i = 0; i < fam.parts.size(); ++i) {
    VertexSet reach = reachable_from(residual, fam.parts[i]);
    for (size_t j = i + 1; j < fam.parts.size(); ++j) {
      for (VertexId v : fam.parts[j]) {
        if (reach.contains(v)) return false;
      }
    }
  }
  return true;
}

// Exhaustive minimum skew separator of size <= max_size.
inline std::optional<VertexSet> brute_skew(const Digraph& g, const SkewFamily& fam, int max_size) {
  VertexSet parts_union;
  for (const VertexSet& p : fam.parts) parts_union = set_union(parts_union, p);
  std::vector<VertexId> candidates;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!parts_union.contains(v)) candidates.push_back(v);
  }
  for (int size = 0; size <= std::min<int>(max_size, static_cast<int>(candidates.size())); ++size) {
    std::optional<VertexSet> hit;
    detail::combinations(static_cast<int>(candidates.size()), size, [&](const VertexSet& idxs) {
      VertexSet s;
      for (int i : idxs) s.insert(candidates[static_cast<size_t>(i)]);
      if (is_skew_separator(g, fam, s)) {
        hit = s;
        return false;
      }
      return true;
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

// Exhaustive colorful mapping search over the per-color classes. Errors out
// when the search space exceeds `cap`.
inline std::optional<std::vector<int>> brute_psi(const PsiInstance& inst, long long cap = 10000000) {
  validate_psi(inst);
  std::vector<std::vector<int>> classes(static_cast<size_t>(inst.g.vertex_count));
  for (int hv = 0; hv < inst.h.vertex_count; ++hv) classes[static_cast<size_t>(inst.col[static_cast<size_t>(hv)])].push_back(hv);
  long long space = 1;
  for (const auto& cls : classes) {
    if (cls.empty()) return std::nullopt;  // some color cannot be realized
    space *= static_cast<long long>(cls.size());
    if (space > cap) throw std::invalid_argument("PSI search space exceeds the configured cap");
  }
  std::vector<int> phi(static_cast<size_t>(inst.g.vertex_count), -1);
  auto rec = [&](auto&& self, int gv) -> bool {
    if (gv == inst.g.vertex_count) return true;
    for (int hv : classes[static_cast<size_t>(gv)]) {
      phi[static_cast<size_t>(gv)] = hv;
      bool ok = true;
      for (auto [a, b] : inst.g.edges) {
        if (a != gv && b != gv) continue;
        int other = (a == gv) ? b : a;
        if (other < gv && !inst.h.has_edge(phi[static_cast<size_t>(gv)], phi[static_cast<size_t>(other)])) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, gv + 1)) return true;
    }
    phi[static_cast<size_t>(gv)] = -1;
    return false;
  };
  if (rec(rec, 0)) return phi;
  return std::nullopt;
}

// Arc-deletion analogue, for the Arc-DOCT reductions: minimum number of arcs
// (<= max_size) whose removal kills every odd-length directed cycle.
inline std::optional<int> brute_arc_doct(const Digraph& g, int max_size) {
  std::vector<int> all_ones(static_cast<size_t>(g.arc_count()), 1);
  for (int size = 0; size <= std::min(max_size, g.arc_count()); ++size) {
    bool hit = false;
    detail::combinations(g.arc_count(), size, [&](const VertexSet& arc_idxs) {
      Digraph residual(g.vertex_count());
      std::vector<int> labels;
      for (int i = 0; i < g.arc_count(); ++i) {
        if (arc_idxs.contains(i)) continue;
        residual.add_arc(g.arc(i).tail, g.arc(i).head);
        labels.push_back(1);
      }
      if (!has_odd_labeled_cycle(residual, labels, {})) {
        hit = true;
        return false;
      }
      return true;
    });
    if (hit) return size;
  }
  return std::nullopt;
}

// Vertex sets of the directed cycles with odd label sum, each simple cycle
// reported once by its vertex set (the two rotations of a bidirected cycle
// collapse).
inline std::set<VertexSet> odd_cycle_vertex_sets(const Digraph& g, const std::vector<int>& arc_label) {
  std::set<VertexSet> out;
  auto adj = out_adjacency(g);
  std::vector<char> on_path(static_cast<size_t>(g.vertex_count()), 0);
  std::vector<VertexId> path;
  auto rec = [&](auto&& self, VertexId root, VertexId cur, int parity) -> void {
    for (auto [w, arc] : adj[static_cast<size_t>(cur)]) {
      int p2 = parity ^ arc_label[static_cast<size_t>(arc)];
      if (w == root) {
        if (p2 == 1) out.insert(VertexSet(path));
      } else if (w > root && !on_path[static_cast<size_t>(w)]) {
        on_path[static_cast<size_t>(w)] = 1;
        path.push_back(w);
        self(self, root, w, p2);
        path.pop_back();
        on_path[static_cast<size_t>(w)] = 0;
      }
    }
  };
  for (VertexId root = 0; root < g.vertex_count(); ++root) {
    on_path.assign(static_cast<size_t>(g.vertex_count()), 0);
    on_path[static_cast<size_t>(root)] = 1;
    path = {root};
    rec(rec, root, root, 0);
  }
  return out;
}

}  // namespace cwc
