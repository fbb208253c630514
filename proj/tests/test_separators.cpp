#include <catch2/catch_amalgamated.hpp>

#include "cwc/oracles.hpp"
#include "cwc/separators.hpp"
#include "test_util.hpp"

using namespace cwc;

namespace {

bool separates(const Digraph& g, const VertexSet& x, const VertexSet& y, const VertexSet& s) {
  VertexSet reach = reachable_from(g.without_vertices(s), x);
  for (VertexId v : y) {
    if (reach.contains(v)) return false;
  }
  return true;
}

// definition-level enumeration: all minimal separators of size <= k avoiding
// X u Y u forbidden, then drop the dominated ones
std::vector<VertexSet> brute_important(const Digraph& g, const VertexSet& x, const VertexSet& y, int k,
                                       const VertexSet& forbidden = {}) {
  std::vector<VertexId> pool;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!x.contains(v) && !y.contains(v) && !forbidden.contains(v)) pool.push_back(v);
  }
  std::vector<VertexSet> minimal;
  for (uint64_t mask = 0; mask < (1ull << pool.size()); ++mask) {
    if (__builtin_popcountll(mask) > k) continue;
    VertexSet s;
    for (size_t b = 0; b < pool.size(); ++b) {
      if (mask & (1ull << b)) s.insert(pool[b]);
    }
    if (!separates(g, x, y, s)) continue;
    bool is_minimal = true;
    for (VertexId v : s) {
      VertexSet smaller = s;
      smaller.erase(v);
      if (separates(g, x, y, smaller)) {
        is_minimal = false;
        break;
      }
    }
    if (is_minimal) minimal.push_back(s);
  }
  std::vector<VertexSet> important;
  for (const VertexSet& s : minimal) {
    VertexSet reach_s = reachable_from(g.without_vertices(s), x);
    bool dominated = false;
    for (const VertexSet& t : minimal) {
      if (t == s) continue;
      if (t.size() <= s.size() && set_minus(reach_s, reachable_from(g.without_vertices(t), x)).empty()) {
        dominated = true;
        break;
      }
    }
    if (!dominated) important.push_back(s);
  }
  std::sort(important.begin(), important.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return important;
}

}  // namespace

TEST_CASE("min cut fixtures") {
  SECTION("single middle vertex") {
    Digraph g(3);
    g.add_arc(0, 1);
    g.add_arc(1, 2);
    auto res = min_vertex_cut(g, {0}, {2}, 1);
    REQUIRE(res.status == CutStatus::Found);
    CHECK(res.cut == VertexSet{1});
  }
  SECTION("direct arc is inseparable") {
    Digraph g(2);
    g.add_arc(0, 1);
    CHECK(min_vertex_cut(g, {0}, {1}, 5).status == CutStatus::Inseparable);
  }
  SECTION("budget exceeded") {
    Digraph g(4);
    g.add_arc(0, 1);
    g.add_arc(1, 3);
    g.add_arc(0, 2);
    g.add_arc(2, 3);
    CHECK(min_vertex_cut(g, {0}, {3}, 1).status == CutStatus::ExceedsBudget);
    auto res = min_vertex_cut(g, {0}, {3}, 2);
    REQUIRE(res.status == CutStatus::Found);
    CHECK(res.cut == VertexSet{1, 2});
  }
  SECTION("overlapping X and Y rejected") {
    Digraph g(2);
    CHECK_THROWS_AS(min_vertex_cut(g, {0}, {0}, 1), std::invalid_argument);
  }
}

TEST_CASE("important separator fixtures") {
  SECTION("pushed past the dominated cut") {
    Digraph g(4);  // x=0 -> a=1 -> b=2 -> y=3
    g.add_arc(0, 1);
    g.add_arc(1, 2);
    g.add_arc(2, 3);
    auto fam = important_separators(g, {0}, {3}, 1);
    REQUIRE(fam.size() == 1);
    CHECK(fam[0] == VertexSet{2});
  }
  SECTION("unique minimal separator") {
    Digraph g(3);
    g.add_arc(0, 1);
    g.add_arc(1, 2);
    auto fam = important_separators(g, {0}, {2}, 2);
    REQUIRE(fam.size() == 1);
    CHECK(fam[0] == VertexSet{1});
  }
  SECTION("parallel paths force both middles") {
    Digraph g(4);
    g.add_arc(0, 1);
    g.add_arc(1, 3);
    g.add_arc(0, 2);
    g.add_arc(2, 3);
    auto fam = important_separators(g, {0}, {3}, 2);
    REQUIRE(fam.size() == 1);
    CHECK(fam[0] == VertexSet{1, 2});
  }
  SECTION("direct arc violates the precondition") {
    Digraph g(2);
    g.add_arc(0, 1);
    CHECK_THROWS_AS(important_separators(g, {0}, {1}, 3), std::invalid_argument);
  }
}

TEST_CASE("important separators match the definition-level enumeration") {
  Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    int n = rng.range(3, 10);
    Digraph g = testing::random_digraph(rng, n, 3 * n);
    VertexSet x{0};
    VertexSet y{n - 1};
    if (rng.coin() && n > 3) {
      x.insert(1);
      y.insert(n - 2);
    }
    bool direct = false;
    for (const Arc& a : g.arcs()) {
      if (x.contains(a.tail) && y.contains(a.head)) direct = true;
    }
    if (direct || !disjoint(x, y)) continue;
    int k = rng.range(1, 3);
    auto got = important_separators(g, x, y, k);
    auto want = brute_important(g, x, y, k);
    CHECK(got == want);
    CHECK(got.size() <= static_cast<size_t>(1 << (2 * k)));
    for (const VertexSet& s : got) {
      CHECK(separates(g, x, y, s));
      CHECK(s.size() <= k);
    }
  }
}

TEST_CASE("important separators honor forbidden vertices") {
  Rng rng(555);
  for (int trial = 0; trial < 120; ++trial) {
    int n = rng.range(4, 9);
    Digraph g = testing::random_digraph(rng, n, 3 * n);
    VertexSet x{0}, y{n - 1};
    VertexSet forbidden;
    for (int v = 1; v < n - 1; ++v) {
      if (rng.below(4) == 0) forbidden.insert(v);
    }
    bool direct = false;
    for (const Arc& a : g.arcs()) {
      if (x.contains(a.tail) && y.contains(a.head)) direct = true;
    }
    if (direct) continue;
    int k = rng.range(1, 3);
    auto got = important_separators(g, x, y, k, forbidden);
    auto want = brute_important(g, x, y, k, forbidden);
    CHECK(got == want);
    for (const VertexSet& s : got) CHECK(disjoint(s, forbidden));
  }
}

TEST_CASE("skew separator fixtures") {
  SECTION("single middle vertex") {
    Digraph g(3);  // w1=0 -> x=1 -> w2=2
    g.add_arc(0, 1);
    g.add_arc(1, 2);
    SkewFamily fam{{VertexSet{0}, VertexSet{2}}};
    auto res = skew_separator(g, fam, 1);
    REQUIRE(res.status == CutStatus::Found);
    CHECK(res.separator == VertexSet{1});
  }
  SECTION("direct arc between parts") {
    Digraph g(2);
    g.add_arc(0, 1);
    SkewFamily fam{{VertexSet{0}, VertexSet{1}}};
    CHECK(skew_separator(g, fam, 10).status == CutStatus::Inseparable);
  }
  SECTION("two parallel two-arc paths") {
    Digraph g(4);
    g.add_arc(0, 1);
    g.add_arc(1, 3);
    g.add_arc(0, 2);
    g.add_arc(2, 3);
    SkewFamily fam{{VertexSet{0}, VertexSet{3}}};
    CHECK(skew_separator(g, fam, 1).status == CutStatus::ExceedsBudget);
    auto res = skew_separator(g, fam, 2);
    REQUIRE(res.status == CutStatus::Found);
    CHECK(res.separator == VertexSet{1, 2});
  }
  SECTION("reverse order needs no deletion") {
    Digraph g(3);
    g.add_arc(0, 1);
    g.add_arc(1, 2);
    SkewFamily fam{{VertexSet{2}, VertexSet{0}}};
    auto res = skew_separator(g, fam, 0);
    REQUIRE(res.status == CutStatus::Found);
    CHECK(res.separator.empty());
  }
  SECTION("overlapping parts rejected") {
    Digraph g(3);
    SkewFamily fam{{VertexSet{0, 1}, VertexSet{1}}};
    CHECK_THROWS_AS(skew_separator(g, fam, 1), std::invalid_argument);
  }
}

TEST_CASE("skew separator validity and completeness against brute force") {
  Rng rng(999);
  for (int trial = 0; trial < 200; ++trial) {
    int n = rng.range(4, 10);
    Digraph g = testing::random_digraph(rng, n, 3 * n);
    int r = rng.range(2, 3);
    std::vector<VertexId> ids(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) ids[static_cast<size_t>(v)] = v;
    for (int i = n - 1; i > 0; --i) std::swap(ids[static_cast<size_t>(i)], ids[rng.below(static_cast<uint64_t>(i) + 1)]);
    SkewFamily fam;
    size_t at = 0;
    for (int p = 0; p < r; ++p) {
      VertexSet part;
      int sz = rng.range(1, 2);
      for (int q = 0; q < sz && at < ids.size(); ++q) part.insert(ids[at++]);
      if (!part.empty()) fam.parts.push_back(part);
    }
    int k = rng.range(0, 3);
    SkewResult got = skew_separator(g, fam, k);
    auto want = brute_skew(g, fam, k);
    if (got.status == CutStatus::Found) {
      CHECK(is_skew_separator(g, fam, got.separator));
      CHECK(got.separator.size() <= k);
      REQUIRE(want.has_value());
    } else {
      CHECK_FALSE(want.has_value());
    }
  }
}
