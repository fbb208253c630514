#include <catch2/catch_amalgamated.hpp>

#include "cwc/gadgets.hpp"
#include "cwc/oracles.hpp"
#include "test_util.hpp"

using namespace cwc;

namespace {

ParityInstance odd_triangle(long long k = 1) {
  ParityInstance inst;
  inst.graph = Digraph(3);
  inst.graph.add_arc(0, 1);
  inst.graph.add_arc(1, 2);
  inst.graph.add_arc(2, 0);
  inst.arc_label = {1, 1, 1};
  inst.weight = {1, 1, 1};
  inst.budget = k;
  return inst;
}

}  // namespace

TEST_CASE("brute CWC fixtures") {
  Permutation swap = Permutation::transposition(2, 0, 1);
  SECTION("walk-free graph") {
    LabeledDigraph d(3, 2);
    d.add_arc(0, 1, swap);
    auto res = brute_cwc(d, 3);
    REQUIRE(res.found);
    CHECK(res.min_weight == 0);
    REQUIRE(res.witnesses.size() == 1);
    CHECK(res.witnesses[0].empty());
  }
  SECTION("odd triangle has three singleton covers") {
    LabeledDigraph d(3, 2);
    for (int i = 0; i < 3; ++i) d.add_arc(i, (i + 1) % 3, swap);
    auto res = brute_cwc(d, 3);
    REQUIRE(res.found);
    CHECK(res.min_weight == 1);
    CHECK(res.witnesses.size() == 3);
  }
  SECTION("two disjoint odd triangles") {
    LabeledDigraph d(6, 2);
    for (int i = 0; i < 3; ++i) d.add_arc(i, (i + 1) % 3, swap);
    for (int i = 0; i < 3; ++i) d.add_arc(3 + i, 3 + (i + 1) % 3, swap);
    auto res = brute_cwc(d, 3);
    REQUIRE(res.found);
    CHECK(res.min_weight == 2);
    CHECK(res.witnesses.size() == 9);
  }
}

TEST_CASE("odd-cycle predicate agrees with explicit cycle enumeration") {
  Rng rng(4096);
  for (int trial = 0; trial < 200; ++trial) {
    int n = rng.range(2, 8);
    Digraph g = testing::random_digraph(rng, n, 3 * n);
    std::vector<int> labels;
    for (int i = 0; i < g.arc_count(); ++i) labels.push_back(rng.coin() ? 1 : 0);
    VertexSet removed;
    for (int v = 0; v < n; ++v) {
      if (rng.below(5) == 0) removed.insert(v);
    }
    Digraph masked(n);
    std::vector<int> masked_labels;
    for (int i = 0; i < g.arc_count(); ++i) {
      const Arc& a = g.arc(i);
      if (removed.contains(a.tail) || removed.contains(a.head)) continue;
      masked.add_arc(a.tail, a.head);
      masked_labels.push_back(labels[static_cast<size_t>(i)]);
    }
    bool via_lift = has_odd_labeled_cycle(g, labels, removed);
    bool via_enum = !odd_cycle_vertex_sets(masked, masked_labels).empty();
    CHECK(via_lift == via_enum);
  }
}

TEST_CASE("brute A-DOCT fixtures") {
  SECTION("odd triangle") {
    auto res = brute_adoct(odd_triangle(), 1);
    REQUIRE(res.found);
    CHECK(res.min_weight == 1);
    CHECK(res.witnesses.size() == 3);
  }
  SECTION("DAG needs nothing") {
    ParityInstance inst;
    inst.graph = Digraph(3);
    inst.graph.add_arc(0, 1);
    inst.graph.add_arc(1, 2);
    inst.arc_label = {1, 1};
    inst.weight = {1, 1, 1};
    inst.budget = 1;
    auto res = brute_adoct(inst, 1);
    REQUIRE(res.found);
    CHECK(res.min_weight == 0);
  }
  SECTION("even cycle is quiet") {
    ParityInstance inst;
    inst.graph = Digraph(2);
    inst.graph.add_arc(0, 1);
    inst.graph.add_arc(1, 0);
    inst.arc_label = {1, 1};
    inst.weight = {1, 1};
    inst.budget = 1;
    auto res = brute_adoct(inst, 1);
    REQUIRE(res.found);
    CHECK(res.min_weight == 0);
  }
  SECTION("weights steer the optimum") {
    ParityInstance inst = odd_triangle(2);
    inst.weight = {5, 2, 4};
    auto res = brute_adoct(inst, 5);
    REQUIRE(res.found);
    CHECK(res.min_weight == 2);
    REQUIRE(res.witnesses.size() == 1);
    CHECK(res.witnesses[0] == VertexSet{1});
  }
}

TEST_CASE("minimal transversal enumeration is sound and complete on random instances") {
  Rng rng(31337);
  for (int trial = 0; trial < 120; ++trial) {
    int n = rng.range(2, 7);
    Digraph g = testing::random_digraph(rng, n, 3 * n);
    ParityInstance inst;
    inst.graph = g;
    for (int i = 0; i < g.arc_count(); ++i) inst.arc_label.push_back(rng.coin() ? 1 : 0);
    inst.budget = 3;
    for (int v = 0; v < n; ++v) inst.weight.push_back(rng.range(1, 3));
    long long cap = rng.range(1, 6);
    auto outputs = minimal_odd_transversals(inst, cap);
    std::set<VertexSet> seen;
    for (const VertexSet& s : outputs) {
      CHECK(is_odd_cycle_transversal(inst, s));
      CHECK(weight_of(inst, s) <= cap);
      CHECK(seen.insert(s).second);  // no duplicates
    }
    // completeness: every inclusion-minimal transversal within the cap shows up
    for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
      VertexSet s;
      for (int v = 0; v < n; ++v) {
        if (mask & (1ull << v)) s.insert(v);
      }
      if (weight_of(inst, s) > cap || !is_odd_cycle_transversal(inst, s)) continue;
      bool minimal = true;
      for (VertexId v : s) {
        VertexSet smaller = s;
        smaller.erase(v);
        if (is_odd_cycle_transversal(inst, smaller)) {
          minimal = false;
          break;
        }
      }
      if (minimal) CHECK(seen.count(s) == 1);
    }
  }
}

TEST_CASE("brute PSI fixtures") {
  SECTION("single cross edge") {
    PsiInstance inst;
    inst.g.vertex_count = 2;
    inst.g.add_edge(0, 1);
    inst.h.vertex_count = 2;
    inst.h.add_edge(0, 1);
    inst.col = {0, 1};
    auto phi = brute_psi(inst);
    REQUIRE(phi);
    CHECK(*phi == std::vector<int>{0, 1});
  }
  SECTION("no cross edge, no mapping") {
    PsiInstance inst;
    inst.g.vertex_count = 2;
    inst.g.add_edge(0, 1);
    inst.h.vertex_count = 2;
    inst.col = {0, 1};
    CHECK_FALSE(brute_psi(inst));
  }
  SECTION("empty color class is a no-instance") {
    PsiInstance inst;
    inst.g.vertex_count = 2;
    inst.g.add_edge(0, 1);
    inst.h.vertex_count = 1;
    inst.col = {0};
    CHECK_FALSE(brute_psi(inst));
  }
}

TEST_CASE("brute arc transversal on a triangle") {
  Digraph g(3);
  g.add_arc(0, 1);
  g.add_arc(1, 2);
  g.add_arc(2, 0);
  auto opt = brute_arc_doct(g, 3);
  REQUIRE(opt);
  CHECK(*opt == 1);
}
