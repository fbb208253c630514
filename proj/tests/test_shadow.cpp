#include <catch2/catch_amalgamated.hpp>

#include "cwc/shadow.hpp"
#include "test_util.hpp"

using namespace cwc;

namespace {

// per-vertex separator check, straight from the definition
Shadow brute_shadow(const Digraph& g, const VertexSet& t, const VertexSet& x) {
  Shadow s;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (x.contains(v) || t.contains(v)) continue;
    bool fwd = true, rev = true;
    auto reach = reachable_from(g.without_vertices(x), t);
    if (reach.contains(v)) fwd = false;
    auto coreach = co_reachable_to(g.without_vertices(x), t);
    if (coreach.contains(v)) rev = false;
    if (fwd) s.forward.insert(v);
    if (rev) s.reverse.insert(v);
  }
  return s;
}

VertexSet full_support(int n) {
  VertexSet s;
  for (int v = 0; v < n; ++v) s.insert(v);
  return s;
}

}  // namespace

TEST_CASE("shadow fixtures") {
  SECTION("cut path") {
    Digraph g(3);  // t=0 -> a=1 -> b=2
    g.add_arc(0, 1);
    g.add_arc(1, 2);
    Shadow s = shadow_of(g, {0}, {1});
    CHECK(s.forward == VertexSet{2});
    CHECK(s.reverse == VertexSet{2});
  }
  SECTION("strongly connected graph has empty shadow") {
    Digraph g(3);
    g.add_arc(0, 1);
    g.add_arc(1, 2);
    g.add_arc(2, 0);
    Shadow s = shadow_of(g, {0}, {});
    CHECK(s.forward.empty());
    CHECK(s.reverse.empty());
  }
  SECTION("unreachable vertex sits in the shadow even without deletions") {
    Digraph g(2);
    Shadow s = shadow_of(g, {0}, {});
    CHECK(s.forward == VertexSet{1});
    CHECK(s.reverse == VertexSet{1});
  }
  SECTION("X overlapping T rejected") {
    Digraph g(2);
    CHECK_THROWS_AS(shadow_of(g, {0}, {0}), std::invalid_argument);
  }
}

TEST_CASE("shadow matches the definition on random instances") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    int n = rng.range(2, 10);
    Digraph g = testing::random_digraph(rng, n, 3 * n);
    VertexSet t{rng.range(0, n - 1)};
    VertexSet x;
    for (int v = 0; v < n; ++v) {
      if (!t.contains(v) && rng.below(4) == 0) x.insert(v);
    }
    Shadow got = shadow_of(g, t, x);
    Shadow want = brute_shadow(g, t, x);
    CHECK(got.forward == want.forward);
    CHECK(got.reverse == want.reverse);
  }
}

TEST_CASE("exhaustive cover family is the power set with the empty set first") {
  Digraph g(5);
  VertexSet w{4};
  CoverFamily fam = cover_family(g, full_support(5), w, 2, CoverMode::Exhaustive, 0, 0);
  CHECK(fam.candidates.size() == 16);
  CHECK(fam.candidates.front().empty());
  std::set<VertexSet> unique(fam.candidates.begin(), fam.candidates.end());
  CHECK(unique.size() == 16);
  for (const VertexSet& z : fam.candidates) CHECK(disjoint(z, w));
}

TEST_CASE("oracle mode returns the known solution's shadow") {
  Digraph g(3);
  g.add_arc(0, 1);
  g.add_arc(1, 2);
  g.add_arc(2, 0);
  VertexSet w{0};
  SECTION("strongly connected residue means an empty candidate") {
    CoverFamily fam = cover_family(g, full_support(3), w, 1, CoverMode::Oracle, 0, 0, VertexSet{});
    REQUIRE(fam.candidates.size() == 1);
    CHECK(fam.candidates[0].empty());
  }
  SECTION("shadow of a cutting solution") {
    CoverFamily fam = cover_family(g, full_support(3), w, 1, CoverMode::Oracle, 0, 0, VertexSet{1});
    REQUIRE(fam.candidates.size() == 1);
    CHECK(fam.candidates[0] == VertexSet{2});
  }
  SECTION("missing solution is an error") {
    CHECK_THROWS_AS(cover_family(g, full_support(3), w, 1, CoverMode::Oracle, 0, 0), std::invalid_argument);
  }
}

TEST_CASE("randomized mode yields exactly `repetitions` candidates inside the support") {
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    int n = rng.range(3, 9);
    Digraph g = testing::random_digraph(rng, n, 3 * n);
    VertexSet w{0};
    int reps = rng.range(1, 20);
    CoverFamily fam = cover_family(g, full_support(n), w, 2, CoverMode::Randomized, trial, reps);
    CHECK(fam.candidates.size() == static_cast<size_t>(reps));
    CHECK(fam.candidates.front().empty());
    for (const VertexSet& z : fam.candidates) {
      CHECK(disjoint(z, w));
      for (VertexId v : z) CHECK(v < n);
    }
  }
}

TEST_CASE("randomized mode is deterministic in the seed") {
  Digraph g(6);
  g.add_arc(0, 1);
  g.add_arc(1, 2);
  g.add_arc(2, 3);
  g.add_arc(3, 4);
  g.add_arc(4, 0);
  g.add_arc(2, 5);
  VertexSet w{0};
  auto a = cover_family(g, full_support(6), w, 2, CoverMode::Randomized, 42, 32);
  auto b = cover_family(g, full_support(6), w, 2, CoverMode::Randomized, 42, 32);
  auto c = cover_family(g, full_support(6), w, 2, CoverMode::Randomized, 43, 32);
  CHECK(a.candidates == b.candidates);
  CHECK(a.candidates != c.candidates);
}

TEST_CASE("default repetitions formula") {
  CHECK(default_repetitions(0) == 1);
  CHECK(default_repetitions(1) == 64);
  CHECK(default_repetitions(2) == 512);
  CHECK(default_repetitions(3) == 3072);
}
