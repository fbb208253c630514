#include <catch2/catch_amalgamated.hpp>

#include "cwc/labeled_digraph.hpp"
#include "cwc/oracles.hpp"
#include "test_util.hpp"

using namespace cwc;

namespace {

// walk enumeration oracle: does some u->v walk of length in [1, max_len]
// map alpha to beta? Independent of the lift-based implementation.
bool walk_oracle(const LabeledDigraph& d, VertexId u, VertexId v, int alpha, int beta, int max_len) {
  auto adj = out_adjacency(d.graph());
  std::vector<std::pair<VertexId, int>> frontier{{u, alpha}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::pair<VertexId, int>> next;
    for (auto [w, img] : frontier) {
      for (auto [w2, arc] : adj[static_cast<size_t>(w)]) {
        next.push_back({w2, d.label(arc).apply(img)});
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    for (auto [w, img] : next) {
      if (w == v && img == beta) return true;
    }
    frontier = std::move(next);
  }
  return false;
}

}  // namespace

TEST_CASE("compose applies first then second") {
  Permutation id = Permutation::identity(3);
  Permutation a = Permutation::from_images({1, 0, 2});
  Permutation b = Permutation::from_images({2, 1, 0});
  CHECK(compose(id, a) == a);
  CHECK(compose(a, id) == a);
  // 0 -> a(0)=1 -> b(1)=1; 1 -> 0 -> 2; 2 -> 2 -> 0
  CHECK(compose(a, b) == Permutation::from_images({1, 2, 0}));
  CHECK(compose(a, a.inverse()) == id);
  CHECK_THROWS_AS(compose(a, Permutation::identity(2)), std::invalid_argument);
}

TEST_CASE("compose is associative and identity neutral over S3 and S4") {
  for (int ell : {3, 4}) {
    auto all = all_permutations(ell);
    Permutation id = Permutation::identity(ell);
    for (const auto& p : all) {
      CHECK(compose(p, id) == p);
      CHECK(compose(id, p) == p);
    }
    for (const auto& p : all) {
      for (const auto& q : all) {
        for (const auto& r : all) {
          CHECK(compose(compose(p, q), r) == compose(p, compose(q, r)));
        }
      }
    }
  }
}

TEST_CASE("non-bijective images rejected") {
  CHECK_THROWS_AS(Permutation::from_images({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_images({0, 2}), std::invalid_argument);
}

TEST_CASE("sigma_of_walk composes in traversal order") {
  LabeledDigraph d(3, 2);
  Permutation swap = Permutation::transposition(2, 0, 1);
  int a0 = d.add_arc(0, 1, swap);
  int a1 = d.add_arc(1, 2, Permutation::identity(2));
  CHECK(sigma_of_walk(d, {}) == Permutation::identity(2));
  CHECK(sigma_of_walk(d, {a0}) == swap);
  CHECK(sigma_of_walk(d, {a0, a1}) == compose(swap, Permutation::identity(2)));
  CHECK_THROWS_AS(sigma_of_walk(d, {a1, a0}), std::invalid_argument);
}

TEST_CASE("sigma_of_walk splits over concatenation") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    LabeledDigraph d = testing::random_strongly_connected(rng, rng.range(2, 6), rng.range(2, 3), 6);
    auto adj = out_adjacency(d.graph());
    // random walk of length up to 8 from vertex 0
    std::vector<int> walk;
    VertexId at = 0;
    for (int step = rng.range(1, 8); step > 0; --step) {
      const auto& out = adj[static_cast<size_t>(at)];
      if (out.empty()) break;
      auto [next, arc] = out[rng.below(out.size())];
      walk.push_back(arc);
      at = next;
    }
    for (size_t cut = 0; cut <= walk.size(); ++cut) {
      std::vector<int> w1(walk.begin(), walk.begin() + static_cast<long>(cut));
      std::vector<int> w2(walk.begin() + static_cast<long>(cut), walk.end());
      CHECK(sigma_of_walk(d, walk) == compose(sigma_of_walk(d, w1), sigma_of_walk(d, w2)));
    }
  }
}

TEST_CASE("auxiliary lift shape") {
  LabeledDigraph d(2, 2);
  d.add_arc(0, 1, Permutation::transposition(2, 0, 1));
  Digraph h = build_aux(d);
  CHECK(h.vertex_count() == 4);
  CHECK(h.arc_count() == 2);
  // u_0 -> v_1 and u_1 -> v_0
  CHECK(h.arc(0).tail == 0);
  CHECK(h.arc(0).head == 3);
  CHECK(h.arc(1).tail == 1);
  CHECK(h.arc(1).head == 2);

  LabeledDigraph triv(3, 1);
  triv.add_arc(0, 1, Permutation::identity(1));
  triv.add_arc(1, 2, Permutation::identity(1));
  Digraph h1 = build_aux(triv);
  CHECK(h1.vertex_count() == 3);
  CHECK(h1.arc_count() == 2);
}

TEST_CASE("walk_realizes on a single labeled arc") {
  LabeledDigraph d(2, 2);
  d.add_arc(0, 1, Permutation::transposition(2, 0, 1));
  CHECK(walk_realizes(d, 0, 1, 0, 1));
  CHECK_FALSE(walk_realizes(d, 0, 1, 0, 0));
}

TEST_CASE("walk_realizes closed-walk conventions") {
  LabeledDigraph d(3, 2);
  Permutation swap = Permutation::transposition(2, 0, 1);
  d.add_arc(0, 1, swap);
  d.add_arc(1, 2, swap);
  d.add_arc(2, 0, swap);
  CHECK(walk_realizes(d, 0, 0, 0, 1, false));
  CHECK(walk_realizes(d, 0, 0, 0, 0, false));  // two rounds of the cycle
  CHECK(walk_realizes(d, 0, 0, 0, 0, true));

  LabeledDigraph arc_only(2, 2);
  arc_only.add_arc(0, 1, swap);
  CHECK_FALSE(walk_realizes(arc_only, 0, 0, 0, 0, false));  // no nonempty closed walk at all
  CHECK(walk_realizes(arc_only, 0, 0, 0, 0, true));
}

TEST_CASE("walk_realizes agrees with walk enumeration") {
  Rng rng(23);
  for (int trial = 0; trial < 120; ++trial) {
    int n = rng.range(2, 6);
    int ell = rng.range(1, 3);
    LabeledDigraph d = testing::random_labeled(rng, n, ell, 2 * n);
    int max_len = ell * n;
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = 0; v < n; ++v) {
        for (int a = 0; a < ell; ++a) {
          for (int b = 0; b < ell; ++b) {
            CHECK(walk_realizes(d, u, v, a, b) == walk_oracle(d, u, v, a, b, max_len));
          }
        }
      }
    }
  }
}

TEST_CASE("colorful walk detection on small fixtures") {
  Permutation swap = Permutation::transposition(2, 0, 1);

  LabeledDigraph triangle(3, 2);
  triangle.add_arc(0, 1, swap);
  triangle.add_arc(1, 2, swap);
  triangle.add_arc(2, 0, swap);
  auto witness = find_colorful_walk(triangle);
  REQUIRE(witness);
  CHECK(witness->vertex == 0);
  REQUIRE(witness->walks.size() == 2);
  for (const auto& walk : witness->walks) {
    REQUIRE_FALSE(walk.empty());
    CHECK(triangle.arc(walk.front()).tail == witness->vertex);
    CHECK(triangle.arc(walk.back()).head == witness->vertex);
  }

  LabeledDigraph two_cycle(2, 2);
  two_cycle.add_arc(0, 1, swap);
  two_cycle.add_arc(1, 0, swap);
  CHECK_FALSE(find_colorful_walk(two_cycle));

  LabeledDigraph lonely(1, 2);
  CHECK_FALSE(find_colorful_walk(lonely));
}

TEST_CASE("witness walks move their label") {
  Rng rng(31);
  int found = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LabeledDigraph d = testing::random_labeled(rng, rng.range(2, 7), rng.range(2, 3), 14);
    auto witness = find_colorful_walk(d);
    if (!witness) continue;
    ++found;
    for (int i = 0; i < d.ell(); ++i) {
      const auto& walk = witness->walks[static_cast<size_t>(i)];
      REQUIRE_FALSE(walk.empty());
      CHECK(d.arc(walk.front()).tail == witness->vertex);
      CHECK(d.arc(walk.back()).head == witness->vertex);
      CHECK(sigma_of_walk(d, walk).apply(i) != i);
    }
  }
  CHECK(found > 10);
}

TEST_CASE("cover check on the odd triangle") {
  Permutation swap = Permutation::transposition(2, 0, 1);
  LabeledDigraph triangle(3, 2);
  triangle.add_arc(0, 1, swap);
  triangle.add_arc(1, 2, swap);
  triangle.add_arc(2, 0, swap);
  CHECK(is_colorful_walk_cover(triangle, {0}));
  CHECK(is_colorful_walk_cover(triangle, {1}));
  CHECK_FALSE(is_colorful_walk_cover(triangle, {}));

  LabeledDigraph quiet(3, 2);
  quiet.add_arc(0, 1, swap);
  CHECK(is_colorful_walk_cover(quiet, {}));
}

TEST_CASE("transposition labeling detects exactly directed odd cycles") {
  Rng rng(47);
  for (int trial = 0; trial < 120; ++trial) {
    int n = rng.range(2, 8);
    Digraph g = testing::random_digraph(rng, n, 3 * n);
    LabeledDigraph d(n, 2);
    Permutation swap = Permutation::transposition(2, 0, 1);
    std::vector<int> ones(static_cast<size_t>(g.arc_count()), 1);
    for (const Arc& a : g.arcs()) d.add_arc_if_absent(a.tail, a.head, swap);
    bool has_odd = !odd_cycle_vertex_sets(g, ones).empty();
    CHECK(has_colorful_walk(d) == has_odd);
  }
}

TEST_CASE("doubling basics") {
  Permutation swap = Permutation::transposition(2, 0, 1);
  LabeledDigraph d(2, 2);
  d.add_arc(0, 1, swap);
  LabeledDigraph dd = doubling(d);
  CHECK(dd.arc_count() == 2);
  CHECK(dd.has_arc(0, 1, swap));
  CHECK(dd.has_arc(1, 0, swap));  // swap is its own inverse

  LabeledDigraph ddd = doubling(dd);
  CHECK(ddd.arc_count() == 2);
  CHECK(is_symmetric(dd));
}

TEST_CASE("doubling preserves colorful walks on strongly connected graphs") {
  Rng rng(59);
  for (int trial = 0; trial < 200; ++trial) {
    int n = rng.range(2, 8);
    int ell = rng.range(1, 3);
    LabeledDigraph d = testing::random_strongly_connected(rng, n, ell, 2 * n);
    CHECK(static_cast<bool>(find_colorful_walk(d)) == static_cast<bool>(find_colorful_walk(doubling(d))));
  }
}

TEST_CASE("consistent labeling fixtures") {
  Permutation swap = Permutation::transposition(2, 0, 1);

  LabeledDigraph even(4, 2);
  for (int i = 0; i < 4; ++i) even.add_arc_if_absent(i, (i + 1) % 4, swap);
  LabeledDigraph even_sym = doubling(even);
  auto lab = find_consistent_labeling(even_sym);
  REQUIRE(lab);
  CHECK(labeling_is_consistent(even_sym, lab->assignment));

  LabeledDigraph odd(3, 2);
  for (int i = 0; i < 3; ++i) odd.add_arc_if_absent(i, (i + 1) % 3, swap);
  CHECK_FALSE(find_consistent_labeling(doubling(odd)));

  CHECK_THROWS_AS(find_consistent_labeling(even_sym, {{0, 5}}), std::out_of_range);
}

TEST_CASE("pinned labelings are honored") {
  Permutation swap = Permutation::transposition(2, 0, 1);
  LabeledDigraph d(2, 2);
  d.add_arc(0, 1, swap);
  auto lab = find_consistent_labeling(d, {{0, 1}});
  REQUIRE(lab);
  CHECK(lab->assignment[0] == 1);
  CHECK(lab->assignment[1] == 0);
  CHECK_FALSE(find_consistent_labeling(d, {{0, 1}, {1, 1}}));
}

TEST_CASE("strongly connected: labeling exists iff no colorful walk") {
  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    int n = rng.range(2, 8);
    int ell = rng.range(1, 3);
    LabeledDigraph d = testing::random_strongly_connected(rng, n, ell, 2 * n);
    bool has_lab = static_cast<bool>(find_consistent_labeling(d));
    bool colorful = static_cast<bool>(find_colorful_walk(d));
    CHECK(has_lab == !colorful);
    if (has_lab) {
      auto lab = find_consistent_labeling(d);
      CHECK(labeling_is_consistent(d, lab->assignment));
    }
  }
}

TEST_CASE("bundle fixtures") {
  LabeledDigraph d(3, 2);
  d.add_arc(0, 1, Permutation::identity(2));

  LabeledDigraph single = bundle(d, {0}, {{0, 0}});
  CHECK(single.arc_count() == d.arc_count());

  LabeledDigraph pair = bundle(d, {0, 2}, {{0, 0}, {2, 1}});
  Permutation swap = Permutation::transposition(2, 0, 1);
  CHECK(pair.has_arc(0, 2, swap));
  CHECK(pair.has_arc(2, 0, swap));

  CHECK_THROWS_AS(bundle(d, {0, 2}, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("bundling keeps consistent labelings consistent") {
  Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    int n = rng.range(2, 8);
    int ell = rng.range(1, 3);
    // build a graph that is consistent with a planted labeling
    std::vector<int> planted(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) planted[static_cast<size_t>(v)] = rng.range(0, ell - 1);
    LabeledDigraph d(n, ell);
    for (int i = 0; i < 3 * n; ++i) {
      int u = rng.range(0, n - 1);
      int v = rng.range(0, n - 1);
      if (u == v) continue;
      Permutation pi = testing::random_permutation(rng, ell);
      // adjust so pi maps planted[u] to planted[v]
      std::vector<int> img = pi.images();
      int want = planted[static_cast<size_t>(v)];
      for (int x = 0; x < ell; ++x) {
        if (img[static_cast<size_t>(x)] == want) {
          std::swap(img[static_cast<size_t>(x)], img[static_cast<size_t>(planted[static_cast<size_t>(u)])]);
          break;
        }
      }
      d.add_arc_if_absent(u, v, Permutation::from_images(img));
    }
    REQUIRE(labeling_is_consistent(d, planted));

    VertexSet x;
    for (int v = 0; v < n; ++v) {
      if (rng.coin()) x.insert(v);
    }
    std::map<VertexId, int> chi;
    for (VertexId v : x) chi[v] = planted[static_cast<size_t>(v)];
    LabeledDigraph bundled = bundle(d, x, chi);
    CHECK(labeling_is_consistent(bundled, planted));
  }
}
