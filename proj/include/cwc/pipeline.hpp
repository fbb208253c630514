// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cwc/labeled_digraph.hpp"
#include "cwc/node_ulc.hpp"
#include "cwc/separators.hpp"
#include "cwc/shadow.hpp"
#include "cwc/torso.hpp"

namespace cwc {

enum class Verdict { Cover, NoWithinBudget };

struct SolveStats {
  long long guesses_tried = 0;
  long long skew_calls = 0;
  long long candidates_consumed = 0;
  double wall_ms = 0;

  void absorb(const SolveStats& other) {
    guesses_tried += other.guesses_tried;
    skew_calls += other.skew_calls;
    candidates_consumed += other.candidates_consumed;
    wall_ms += other.wall_ms;
  }
};

struct SolverOutcome {
  Verdict verdict = Verdict::NoWithinBudget;
  VertexSet cover;
  SolveStats stats;
};

struct FamilyConfig {
  CoverMode mode = CoverMode::Exhaustive;
  uint64_t seed = 0;
  int repetitions = 0;  // <= 0 resolves to default_repetitions(k) at the entry point
  std::optional<VertexSet> oracle_solution;
};

// Restricted CWC instance: find a minimum cover of size <= budget disjoint
// from `anchor` in a graph masked to `support`. anchor must itself be a
// cover whose induced subgraph is strongly connected.
struct RestrictedInstance {
  LabeledDigraph graph;  // arcs only within support
  VertexSet support;
  VertexSet anchor;
  int budget = 0;
};

namespace detail {

inline void check_restricted_invariants(const RestrictedInstance& inst) {
  if (!set_minus(inst.anchor, inst.support).empty()) throw std::invalid_argument("anchor must lie inside the support");
  if (!is_colorful_walk_cover(inst.graph, inst.anchor)) throw std::invalid_argument("anchor is not a colorful walk cover");
  if (inst.anchor.size() >= 2) {
    LabeledDigraph sub = inst.graph.induced(inst.anchor);
    int count = 0;
    std::vector<int> comp = scc_ids(sub.graph(), count);
    int c0 = comp[static_cast<size_t>(*inst.anchor.begin())];
    for (VertexId v : inst.anchor) {
      if (comp[static_cast<size_t>(v)] != c0) throw std::invalid_argument("anchor does not induce a strongly connected subgraph");
    }
  }
}

inline std::vector<long long> canonical_arcs(const LabeledDigraph& d) {
  std::vector<std::vector<long long>> rows;
  for (int i = 0; i < d.arc_count(); ++i) {
    std::vector<long long> row{d.arc(i).tail, d.arc(i).head};
    for (int x : d.label(i).images()) row.push_back(x);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  std::vector<long long> flat;
  for (const auto& row : rows) {
    for (long long x : row) flat.push_back(x);
    flat.push_back(-1);
  }
  return flat;
}

}  // namespace detail

// Torso away each candidate shadow cover, symmetrize, and hand the residue to
// the Node ULC solver with the anchor forbidden; every answer is re-verified
// on the untouched instance graph, so malformed candidates can only cost
// time. The minimum verified answer is returned; when the family contains a
// shadow cover of an optimal solution (always, in exhaustive mode) that
// answer is a true minimum.
inline std::optional<VertexSet> solve_restricted(const RestrictedInstance& inst, const CoverFamily& family,
                                                 SolveStats* stats = nullptr) {
  detail::check_restricted_invariants(inst);
  if (inst.budget < 0) return std::nullopt;
  if (!has_colorful_walk(inst.graph)) return VertexSet{};

  std::optional<VertexSet> best;
  std::set<std::vector<long long>> seen_torsos;
  VertexSet free_zone = set_minus(inst.support, inst.anchor);
  for (const VertexSet& raw : family.candidates) {
    if (!disjoint(raw, inst.anchor)) continue;  // skipped per contract
    VertexSet z = set_intersect(raw, free_zone);
    LabeledDigraph torso = labeled_torso(inst.graph, z);
    if (!seen_torsos.insert(detail::canonical_arcs(torso)).second) continue;
    if (stats) ++stats->candidates_consumed;
    UlcInstance ulc{doubling(torso), inst.budget, inst.anchor};
    auto sol = solve_node_ulc(ulc);
    if (!sol) continue;
    if (sol->size() > inst.budget || !disjoint(*sol, inst.anchor)) continue;
    if (!is_colorful_walk_cover(inst.graph, *sol)) continue;
    if (!best || sol->size() < best->size() ||
        (sol->size() == best->size() && *sol < *best)) {
      best = sol;
    }
    if (best && best->size() <= 1) break;  // 1 is the floor once a walk exists
  }
  return best;
}

// Cache across compress guesses and iterations; keyed on the full induced
// labeled subgraph plus anchor and family configuration, with results
// computed at the top-level budget so lower-budget queries can reuse them.
using RestrictedCache = std::map<std::vector<long long>, std::optional<VertexSet>>;

namespace detail {

inline uint64_t family_seed(const FamilyConfig& cfg, const VertexSet& support, const VertexSet& anchor) {
  uint64_t h = cfg.seed;
  for (VertexId v : support) h = mix_seed(h, static_cast<uint64_t>(v) + 1);
  for (VertexId v : anchor) h = mix_seed(h, 0x8000000000000000ull | static_cast<uint64_t>(v));
  return h;
}

inline std::optional<VertexSet> solve_restricted_cached(const LabeledDigraph& masked, const VertexSet& support,
                                                        const VertexSet& anchor, int query_budget,
                                                        int cache_budget, const FamilyConfig& cfg,
                                                        RestrictedCache* cache, SolveStats* stats) {
  std::optional<VertexSet> result;
  std::vector<long long> key;
  if (cache) {
    key = canonical_arcs(masked);
    key.push_back(-2);
    for (VertexId v : support) key.push_back(v);
    key.push_back(-2);
    for (VertexId v : anchor) key.push_back(v);
    key.push_back(static_cast<long long>(cfg.mode));
    key.push_back(static_cast<long long>(cfg.seed));
    key.push_back(cfg.repetitions);
    key.push_back(cache_budget);
    auto it = cache->find(key);
    if (it != cache->end()) {
      result = it->second;
      if (result && result->size() > query_budget) return std::nullopt;
      return result;
    }
  }
  RestrictedInstance inst{masked, support, anchor, cache_budget};
  CoverFamily family = cover_family(masked.graph(), support, anchor, cache_budget, cfg.mode,
                                    family_seed(cfg, support, anchor), cfg.repetitions, cfg.oracle_solution);
  result = solve_restricted(inst, family, stats);
  if (cache) (*cache)[key] = result;
  if (result && result->size() > query_budget) return std::nullopt;
  return result;
}

}  // namespace detail

// W-nice solving: every part must sit in its own strong component with no
// W_i -> W_j path for i < j; the instance decomposes into independent
// Restricted CWC instances whose minima are summed.
inline std::optional<VertexSet> solve_nice(const LabeledDigraph& d, int budget, const SkewFamily& parts,
                                           const FamilyConfig& cfg, RestrictedCache* cache = nullptr,
                                           SolveStats* stats = nullptr, int cache_budget = -1) {
  if (cache_budget < 0) cache_budget = budget;
  validate_skew_family(parts);
  std::vector<VertexSet> comps = scc_topological(d.graph());
  std::vector<int> comp_of(static_cast<size_t>(d.vertex_count()), -1);
  for (size_t c = 0; c < comps.size(); ++c) {
    for (VertexId v : comps[c]) comp_of[static_cast<size_t>(v)] = static_cast<int>(c);
  }
  std::vector<int> part_comp;
  for (const VertexSet& part : parts.parts) {
    int c = comp_of[static_cast<size_t>(*part.begin())];
    for (VertexId v : part) {
      if (comp_of[static_cast<size_t>(v)] != c) throw std::invalid_argument("a part is split across strong components");
    }
    part_comp.push_back(c);
  }
  for (size_t i = 0; i < part_comp.size(); ++i) {
    for (size_t j = i + 1; j < part_comp.size(); ++j) {
      if (part_comp[i] == part_comp[j]) throw std::invalid_argument("two parts share a strong component");
    }
  }
  // In the emitted order no earlier component reaches a later one, so the
  // required absence of W_i -> W_j paths (i < j) is exactly that the parts'
  // component indices are non-increasing... they need not be adjacent, so
  // check real reachability over the condensation.
  {
    const size_t cc = comps.size();
    std::vector<std::vector<char>> reach(cc, std::vector<char>(cc, 0));
    std::vector<std::vector<int>> cadj(cc);
    for (const Arc& a : d.graph().arcs()) {
      int cu = comp_of[static_cast<size_t>(a.tail)];
      int cv = comp_of[static_cast<size_t>(a.head)];
      if (cu != cv) cadj[static_cast<size_t>(cu)].push_back(cv);
    }
    for (size_t c = 0; c < cc; ++c) {
      std::vector<int> queue{static_cast<int>(c)};
      reach[c][c] = 1;
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        for (int w : cadj[static_cast<size_t>(queue[qi])]) {
          if (!reach[c][static_cast<size_t>(w)]) {
            reach[c][static_cast<size_t>(w)] = 1;
            queue.push_back(w);
          }
        }
      }
    }
    for (size_t i = 0; i < part_comp.size(); ++i) {
      for (size_t j = i + 1; j < part_comp.size(); ++j) {
        if (reach[static_cast<size_t>(part_comp[i])][static_cast<size_t>(part_comp[j])]) {
          throw std::invalid_argument("part order violates the skew condition");
        }
      }
    }
  }

  // Components holding no part must already be walk-free; when they are not,
  // the caller's guess cannot be the respecting partition, so report failure
  // rather than erroring.
  for (size_t c = 0; c < comps.size(); ++c) {
    bool has_part = false;
    for (int pc : part_comp) {
      if (pc == static_cast<int>(c)) has_part = true;
    }
    if (has_part) continue;
    if (has_colorful_walk(d.induced(comps[c]))) return std::nullopt;
  }

  VertexSet total;
  int used = 0;
  for (size_t i = 0; i < parts.parts.size(); ++i) {
    const VertexSet& comp = comps[static_cast<size_t>(part_comp[i])];
    auto sol = detail::solve_restricted_cached(d.induced(comp), comp, parts.parts[i], budget, cache_budget,
                                               cfg, cache, stats);
    if (!sol) return std::nullopt;
    used += sol->size();
    if (used > budget) return std::nullopt;
    total = set_union(total, *sol);
  }
  return total;
}

struct CompressionInstance {
  LabeledDigraph graph;
  int budget = 0;
  VertexSet known_cover;  // size <= 2k+1, verified on construction
};

namespace detail {

using SetPartition = std::vector<std::vector<VertexId>>;

inline std::vector<std::vector<SetPartition>> set_partitions_by_block_count(const std::vector<VertexId>& items) {
  // restricted growth strings, bucketed by number of blocks
  std::vector<std::vector<SetPartition>> buckets(items.size() + 1);
  if (items.empty()) return buckets;
  std::vector<int> assign(items.size(), 0);
  auto emit = [&]() {
    int blocks = 0;
    for (int a : assign) blocks = std::max(blocks, a + 1);
    SetPartition part(static_cast<size_t>(blocks));
    for (size_t i = 0; i < items.size(); ++i) part[static_cast<size_t>(assign[i])].push_back(items[i]);
    buckets[static_cast<size_t>(blocks)].push_back(std::move(part));
  };
  auto rec = [&](auto&& self, size_t pos, int max_used) -> void {
    if (pos == items.size()) {
      emit();
      return;
    }
    for (int b = 0; b <= max_used + 1 && b < static_cast<int>(items.size()); ++b) {
      assign[pos] = b;
      self(self, pos + 1, std::max(max_used, b));
    }
  };
  assign[0] = 0;
  rec(rec, 1, 0);
  return buckets;
}

inline bool gamma_consistent_on_block(const LabeledDigraph& d, const std::vector<VertexId>& block,
                                      const std::map<VertexId, int>& gamma) {
  for (int i = 0; i < d.arc_count(); ++i) {
    const Arc& a = d.arc(i);
    auto it = gamma.find(a.tail);
    auto jt = gamma.find(a.head);
    if (it == gamma.end() || jt == gamma.end()) continue;
    bool tail_in = std::find(block.begin(), block.end(), a.tail) != block.end();
    bool head_in = std::find(block.begin(), block.end(), a.head) != block.end();
    if (!tail_in || !head_in) continue;
    if (d.label(i).apply(it->second) != jt->second) return false;
  }
  return true;
}

}  // namespace detail

// One compression round: guesses the deleted part Y of the known cover, an
// ordered partition of the rest, and a labeling; bundles, cuts a skew
// separator, and solves the W-nice residue. Deviating from the source
// procedure, Y is deleted up front, both later budgets shrink to k - |Y|,
// and Y joins the returned cover, so the answer is Y u X u Z of size <= 2k.
inline SolverOutcome compress(const CompressionInstance& inst, const FamilyConfig& cfg,
                              RestrictedCache* cache = nullptr) {
  const auto t0 = std::chrono::steady_clock::now();
  SolverOutcome out;
  auto finish = [&](Verdict v, VertexSet cover) {
    out.verdict = v;
    out.cover = std::move(cover);
    out.stats.wall_ms +=
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
  };

  if (inst.budget < 0) throw std::invalid_argument("negative budget");
  if (inst.known_cover.size() > 2 * inst.budget + 1) throw std::invalid_argument("known cover too large");
  if (!is_colorful_walk_cover(inst.graph, inst.known_cover)) throw std::invalid_argument("known cover is not a cover");

  if (!has_colorful_walk(inst.graph)) return finish(Verdict::Cover, {});

  const int k = inst.budget;
  const std::vector<VertexId>& shat = inst.known_cover.ids();
  const int m = static_cast<int>(shat.size());

  for (int ysize = 0; ysize <= std::min(k, m); ++ysize) {
    std::vector<int> pick(static_cast<size_t>(ysize));
    auto enum_y = [&](auto&& self, int start, int depth) -> std::optional<VertexSet> {
      if (depth == ysize) {
        VertexSet y;
        for (int idx : pick) y.insert(shat[static_cast<size_t>(idx)]);
        const int k1 = k - ysize;
        LabeledDigraph d1 = inst.graph.without_vertices(y);
        VertexSet rest = set_minus(inst.known_cover, y);

        if (rest.empty()) {
          ++out.stats.guesses_tried;
          if (!has_colorful_walk(d1)) return y;
          return std::nullopt;
        }

        auto buckets = detail::set_partitions_by_block_count(rest.ids());
        for (size_t bc = 1; bc < buckets.size(); ++bc) {
          for (const auto& blocks : buckets[bc]) {
            const size_t r = blocks.size();
            // blocks that cannot precede each other because of a direct arc
            std::vector<std::vector<char>> direct(r, std::vector<char>(r, 0));
            for (int ai = 0; ai < d1.arc_count(); ++ai) {
              const Arc& a = d1.arc(ai);
              int ba = -1, bb = -1;
              for (size_t b = 0; b < r; ++b) {
                if (std::find(blocks[b].begin(), blocks[b].end(), a.tail) != blocks[b].end()) ba = static_cast<int>(b);
                if (std::find(blocks[b].begin(), blocks[b].end(), a.head) != blocks[b].end()) bb = static_cast<int>(b);
              }
              if (ba >= 0 && bb >= 0 && ba != bb) direct[static_cast<size_t>(ba)][static_cast<size_t>(bb)] = 1;
            }
            std::vector<int> order(r);
            for (size_t i = 0; i < r; ++i) order[i] = static_cast<int>(i);
            do {
              bool feasible = true;
              for (size_t i = 0; i < r && feasible; ++i) {
                for (size_t j = i + 1; j < r && feasible; ++j) {
                  if (direct[static_cast<size_t>(order[i])][static_cast<size_t>(order[j])]) feasible = false;
                }
              }
              if (!feasible) continue;
              SkewFamily parts;
              for (size_t i = 0; i < r; ++i) parts.parts.push_back(VertexSet(blocks[static_cast<size_t>(order[i])]));
              ++out.stats.skew_calls;
              SkewResult skew = skew_separator(d1.graph(), parts, k1);
              if (skew.status != CutStatus::Found) continue;
              LabeledDigraph d1x = d1.without_vertices(skew.separator);

              // labelings: only blocks of size >= 2 matter (singletons are
              // never bundled), enumerated lexicographically
              std::vector<VertexId> labeled_vertices;
              for (size_t i = 0; i < r; ++i) {
                if (blocks[order[static_cast<size_t>(i)]].size() >= 2) {
                  for (VertexId v : blocks[order[static_cast<size_t>(i)]]) labeled_vertices.push_back(v);
                }
              }
              std::vector<int> gamma_vec(labeled_vertices.size(), 0);
              bool more = true;
              while (more) {
                ++out.stats.guesses_tried;
                std::map<VertexId, int> gamma;
                for (size_t i = 0; i < labeled_vertices.size(); ++i) gamma[labeled_vertices[i]] = gamma_vec[i];
                bool ok = true;
                LabeledDigraph d3 = d1x;
                for (size_t i = 0; i < r && ok; ++i) {
                  const auto& block = blocks[order[static_cast<size_t>(i)]];
                  if (block.size() < 2) continue;
                  if (!detail::gamma_consistent_on_block(d1x, block, gamma)) {
                    ok = false;
                    break;
                  }
                  std::map<VertexId, int> chi;
                  for (VertexId v : block) chi[v] = gamma[v];
                  d3 = bundle(d3, VertexSet(block), chi);
                }
                if (ok) {
                  auto z = solve_nice(d3, k1, parts, cfg, cache, &out.stats, k);
                  if (z) {
                    VertexSet cand = set_union(y, set_union(skew.separator, *z));
                    if (cand.size() > 2 * k) throw std::logic_error("budget accounting violated");
                    if (is_colorful_walk_cover(inst.graph, cand)) return cand;
                  }
                }
                // advance gamma_vec
                more = false;
                for (size_t i = gamma_vec.size(); i-- > 0;) {
                  if (gamma_vec[i] + 1 < inst.graph.ell()) {
                    ++gamma_vec[i];
                    std::fill(gamma_vec.begin() + static_cast<long>(i) + 1, gamma_vec.end(), 0);
                    more = true;
                    break;
                  }
                }
                if (labeled_vertices.empty()) more = false;
              }
            } while (std::next_permutation(order.begin(), order.end()));
          }
        }
        return std::nullopt;
      }
      for (int idx = start; idx < m; ++idx) {
        pick[static_cast<size_t>(depth)] = idx;
        auto res = self(self, idx + 1, depth + 1);
        if (res) return res;
      }
      return std::nullopt;
    };
    auto res = enum_y(enum_y, 0, 0);
    if (res) return finish(Verdict::Cover, *res);
  }
  return finish(Verdict::NoWithinBudget, {});
}

// Iterative compression over the input vertex order: grow the graph one
// vertex at a time, carrying a cover of size <= 2k+1 into each compression
// round.
inline SolverOutcome solve_cwc_approx(const LabeledDigraph& d, int k, FamilyConfig cfg) {
  if (k < 0) throw std::invalid_argument("negative budget");
  if (cfg.repetitions <= 0) cfg.repetitions = default_repetitions(k);
  const auto t0 = std::chrono::steady_clock::now();
  const int n = d.vertex_count();
  RestrictedCache cache;
  SolveStats stats;

  VertexSet prefix;
  for (int v = 0; v < std::min(n, 2 * k + 1); ++v) prefix.insert(v);
  VertexSet shat = prefix;
  VertexSet cover;

  while (true) {
    VertexSet hidden;
    for (int v = 0; v < n; ++v) {
      if (!prefix.contains(v)) hidden.insert(v);
    }
    CompressionInstance inst{d.without_vertices(hidden), k, shat};
    SolverOutcome round = compress(inst, cfg, &cache);
    stats.absorb(round.stats);
    if (round.verdict == Verdict::NoWithinBudget) {
      stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      return {Verdict::NoWithinBudget, {}, stats};
    }
    cover = round.cover;
    if (prefix.size() == n) break;
    VertexId next = prefix.size();
    prefix.insert(next);
    shat = cover;
    shat.insert(next);
  }
  stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return {Verdict::Cover, cover, stats};
}

// DOCT as CWC with ell = 2 and every arc labeled with the transposition;
// parallel arcs collapse, self-loops are rejected.
inline SolverOutcome solve_doct_approx(const Digraph& g, int k, const FamilyConfig& cfg) {
  LabeledDigraph lab(g.vertex_count(), 2);
  Permutation swap = Permutation::transposition(2, 0, 1);
  for (const Arc& a : g.arcs()) {
    if (a.tail == a.head) throw std::invalid_argument("self-loops are not allowed");
    lab.add_arc_if_absent(a.tail, a.head, swap);
  }
  return solve_cwc_approx(lab, k, cfg);
}

}  // namespace cwc
