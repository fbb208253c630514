// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "cwc/digraph.hpp"
#include "cwc/rng.hpp"
#include "cwc/separators.hpp"

namespace cwc {

struct Shadow {
  VertexSet forward;  // vertices with no T -> v path in D - X
  VertexSet reverse;  // vertices with no v -> T path in D - X
  VertexSet both() const { return set_union(forward, reverse); }
};

inline Shadow shadow_of(const Digraph& g, const VertexSet& terminals, const VertexSet& x) {
  if (!disjoint(terminals, x)) throw std::invalid_argument("X must be disjoint from the terminals");
  Digraph residual = g.without_vertices(x);
  VertexSet fwd_reach = reachable_from(residual, terminals);
  VertexSet rev_reach = co_reachable_to(residual, terminals);
  Shadow s;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (x.contains(v) || terminals.contains(v)) continue;
    if (!fwd_reach.contains(v)) s.forward.insert(v);
    if (!rev_reach.contains(v)) s.reverse.insert(v);
  }
  return s;
}

enum class CoverMode { Exhaustive, Oracle, Randomized };

inline const char* to_string(CoverMode m) {
  switch (m) {
    case CoverMode::Exhaustive: return "exhaustive";
    case CoverMode::Oracle: return "oracle";
    case CoverMode::Randomized: return "randomized";
  }
  return "?";
}

struct CoverFamily {
  std::vector<VertexSet> candidates;
  CoverMode mode = CoverMode::Exhaustive;
  std::optional<uint64_t> seed;
};

// Default candidate count for the randomized mode; surfaced as a CLI knob.
inline int default_repetitions(int k) {
  long long r = (1ll << (2 * k)) * static_cast<long long>(k) * 16;
  if (r < 1) r = 1;
  if (r > 1 << 20) r = 1 << 20;
  return static_cast<int>(r);
}

namespace detail {

// One randomized candidate: pool the shadows of an important separator from a
// random source set towards W and of one sampled in the reversed graph, which
// mirrors the sampling step the cited derandomized construction replaces.
inline VertexSet sample_shadow_candidate(const Digraph& g, const Digraph& grev, const VertexSet& support,
                                         const VertexSet& w, int budget, Rng& rng) {
  std::vector<VertexId> free;
  for (VertexId v : support)
    if (!w.contains(v)) free.push_back(v);
  VertexSet z;
  if (free.empty() || budget <= 0) return z;
  VertexSet a;
  for (VertexId v : free)
    if (rng.coin()) a.insert(v);
  if (a.empty()) a.insert(free[static_cast<size_t>(rng.below(free.size()))]);
  int kprime = rng.range(1, budget);

  auto add_sample = [&](const Digraph& dir, const VertexSet& from, const VertexSet& to) {
    bool direct = false;
    for (const Arc& arc : dir.arcs()) {
      if (from.contains(arc.tail) && to.contains(arc.head)) {
        direct = true;
        break;
      }
    }
    if (direct) return;
    auto seps = important_separators(dir, from, to, kprime);
    if (seps.empty()) return;
    const VertexSet& s = seps[static_cast<size_t>(rng.below(seps.size()))];
    z = set_union(z, shadow_of(g, w, s).both());
  };
  add_sample(g, a, w);
  add_sample(grev, w, a);
  return set_intersect(z, set_minus(support, w));
}

}  // namespace detail

// Candidate shadow covers Z_1..Z_t over support \ W.
//   exhaustive  - the full power set of support \ W, empty set first; some
//                 candidate always equals the shadow of an optimal solution.
//   oracle      - the single candidate shadow_of(known_solution); test
//                 harness mode.
//   randomized  - empty set followed by repetitions-1 sampled candidates;
//                 one-sided error, downstream verification rejects bad ones.
inline CoverFamily cover_family(const Digraph& g, const VertexSet& support, const VertexSet& w, int budget,
                                CoverMode mode, uint64_t seed, int repetitions,
                                const std::optional<VertexSet>& known_solution = std::nullopt) {
  CoverFamily fam;
  fam.mode = mode;
  VertexSet universe = set_minus(support, w);
  switch (mode) {
    case CoverMode::Exhaustive: {
      if (universe.size() > 22) throw std::invalid_argument("exhaustive cover family too large");
      const std::vector<VertexId>& ids = universe.ids();
      const uint64_t total = 1ull << universe.size();
      fam.candidates.reserve(static_cast<size_t>(total));
      for (uint64_t mask = 0; mask < total; ++mask) {
        VertexSet z;
        for (int b = 0; b < universe.size(); ++b) {
          if (mask & (1ull << b)) z.insert(ids[static_cast<size_t>(b)]);
        }
        fam.candidates.push_back(std::move(z));
      }
      break;
    }
    case CoverMode::Oracle: {
      if (!known_solution) throw std::invalid_argument("oracle mode needs a known solution");
      VertexSet s = set_intersect(*known_solution, universe);
      fam.candidates.push_back(set_intersect(shadow_of(g, w, s).both(), universe));
      break;
    }
    case CoverMode::Randomized: {
      fam.seed = seed;
      if (repetitions <= 0) repetitions = default_repetitions(budget);
      Rng rng(seed);
      Digraph grev = g.reversed();
      fam.candidates.push_back({});
      while (static_cast<int>(fam.candidates.size()) < repetitions) {
        fam.candidates.push_back(detail::sample_shadow_candidate(g, grev, support, w, budget, rng));
      }
      break;
    }
  }
  return fam;
}

}  // namespace cwc
