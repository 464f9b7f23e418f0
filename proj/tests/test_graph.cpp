#include "doctest.h"

#include <random>
#include <set>

#include "fixtures.hpp"
#include "stk/graph.hpp"

using namespace stk;

static VertexSet vs(const CommutationGraph& g, const std::vector<std::string>& names) {
  VertexSet out;
  for (const auto& n : names) out.push_back(g.index_of(n));
  std::sort(out.begin(), out.end());
  return out;
}

TEST_CASE("graph construction rejects bad input") {
  CHECK_THROWS_AS(CommutationGraph({}, {}), Error);
  CHECK_THROWS_AS(CommutationGraph({"a", "a"}, {}), Error);
  CHECK_THROWS_AS(CommutationGraph({"a"}, {{"a", "a"}}), Error);
  CHECK_THROWS_AS(CommutationGraph({"a"}, {{"a", "b"}}), Error);
}

TEST_CASE("star") {
  auto g = example_graph();
  CHECK(star(g, VertexSet{g.index_of("f")}) == vs(g, {"d", "e", "f", "g"}));
  CHECK(star(g, VertexSet{}) == g.all_vertices());
  auto n2 = null_graph(3);
  CHECK(star(n2, n2.all_vertices()) == VertexSet{});
}

TEST_CASE("link") {
  auto g = example_graph();
  CHECK(link(g, g.index_of("i")) == vs(g, {"h"}));
  CHECK(link(g, g.index_of("a")) == vs(g, {"c", "d", "e"}));
  auto n1 = null_graph(1);
  CHECK(link(n1, 0) == VertexSet{});
}

TEST_CASE("closure") {
  auto g = example_graph();
  CHECK(closure(g, g.index_of("f")) == vs(g, {"d", "e", "f", "g"}));
  CHECK(closure(g, g.index_of("a")) == vs(g, {"a", "d"}));
  auto k4 = complete_graph(4);
  CHECK(closure(k4, VertexSet{1}) == k4.all_vertices());
}

TEST_CASE("admissible sets of the example graph") {
  auto g = example_graph();
  CHECK(admissible(g, g.index_of("a")) == vs(g, {"a", "b", "d", "h"}));
  CHECK(admissible(g, g.index_of("i")) == vs(g, {"c", "d", "e", "h", "i"}));
  CHECK(admissible(g, g.index_of("d")) == vs(g, {"d"}));
  CHECK(admissible(g, g.index_of("e")) == vs(g, {"d", "e"}));
  CHECK(admissible(g, g.index_of("f")) == vs(g, {"d", "e", "f", "g"}));
}

TEST_CASE("similarity classes") {
  auto g = example_graph();
  CHECK(sim_class(g, g.index_of("a")) == vs(g, {"a", "b"}));
  CHECK(sim_class(g, g.index_of("f")) == vs(g, {"f", "g"}));
  CHECK(sim_class(g, g.index_of("d")) == vs(g, {"d"}));
}

TEST_CASE("lattice of the example graph") {
  auto g = example_graph();
  auto lat = build_lattice(g);
  CHECK(lat.h_K == 3);
  CHECK(lat.level_vertices[3] == vs(g, {"i"}));
  CHECK(lat.level_vertices[2] == vs(g, {"c", "f", "g"}));
  CHECK(lat.level_vertices[1] == vs(g, {"a", "b", "e"}));
  CHECK(lat.level_vertices[0] == vs(g, {"d", "h"}));
  CHECK(lat.level_admissible[1] == vs(g, {"a", "b", "d", "e", "h"}));
  CHECK(lat.level_admissible[2] == vs(g, {"a", "b", "c", "d", "e", "f", "g", "h"}));
  CHECK(lat.transversal == vs(g, {"a", "c", "d", "e", "f", "h", "i"}));
  CHECK(lat.level_transversal[2] == vs(g, {"c", "f"}));

  // the seven cover pairs of the inclusion diagram
  std::set<std::pair<std::string, std::string>> covers;
  for (auto [lo, hi] : lat.cover_edges)
    covers.insert({g.name(lat.nodes[lo].rep), g.name(lat.nodes[hi].rep)});
  std::set<std::pair<std::string, std::string>> expect = {
      {"h", "i"}, {"h", "a"}, {"d", "a"}, {"d", "e"},
      {"e", "c"}, {"e", "f"}, {"c", "i"}};
  CHECK(covers == expect);
}

TEST_CASE("lattice of a single vertex") {
  auto g = null_graph(1);
  auto lat = build_lattice(g);
  CHECK(lat.nodes.size() == 1);
  CHECK(lat.h_K == 0);
}

TEST_CASE("class partitions") {
  auto g = example_graph();
  auto pa = class_partition(g, g.index_of("a"));
  CHECK(pa.cls == vs(g, {"a", "b"}));
  CHECK(pa.a_s == vs(g, {"d"}));
  CHECK(pa.a_out == vs(g, {"h"}));
  CHECK_FALSE(pa.abelian);

  auto pf = class_partition(g, g.index_of("f"));
  CHECK(pf.cls == vs(g, {"f", "g"}));
  CHECK(pf.a_s == vs(g, {"d", "e"}));
  CHECK(pf.a_out.empty());
  CHECK(pf.abelian);

  auto pi = class_partition(g, g.index_of("i"));
  CHECK(pi.cls == vs(g, {"i"}));
  CHECK(pi.a_s == vs(g, {"h"}));
  CHECK(pi.a_out == vs(g, {"c", "d", "e"}));
  CHECK_FALSE(pi.abelian);
}

static void check_graph_laws(const CommutationGraph& g) {
  for (int x = 0; x < g.size(); ++x) {
    VertexSet ax = admissible(g, x);
    // y in a(x) implies a(y) subset of a(x)
    for (int y : ax) CHECK(subset_of(admissible(g, y), ax));
    // a(y) subset a(x) iff lk(x) subset st(y)
    for (int y = 0; y < g.size(); ++y) {
      bool lhs = subset_of(admissible(g, y), ax);
      bool rhs = subset_of(link(g, x), star(g, y));
      CHECK(lhs == rhs);
    }
    // membership criterion used by the whitehead engine
    for (int a = 0; a < g.size(); ++a)
      CHECK(set_contains(ax, a) == subset_of(link(g, x), star(g, a)));
    // [x] = a(x) minus the union of strictly smaller admissible sets inside it
    VertexSet cut = ax;
    for (int y : ax) {
      VertexSet ay = admissible(g, y);
      if (ay != ax && subset_of(ay, ax)) cut = set_difference(cut, ay);
    }
    CHECK(cut == sim_class(g, x));
    // closure is a simplex; abelian case iff a(x) is a simplex
    CHECK(is_simplex(g, closure(g, x)));
    CHECK(abelian_case(g, x) == is_simplex(g, ax));
    auto part = class_partition(g, x);
    CHECK(set_union(part.cls, set_union(part.a_s, part.a_out)) == ax);
    CHECK(set_intersect(part.cls, part.a_s).empty());
    CHECK(set_intersect(part.cls, part.a_out).empty());
    CHECK(set_intersect(part.a_s, part.a_out).empty());
    if (part.abelian) CHECK(part.a_out.empty());
  }
  auto lat = build_lattice(g);
  VertexSet all;
  for (const auto& v : lat.level_vertices) all = set_union(all, v);
  CHECK(all == g.all_vertices());
  for (int k = 1; k <= lat.h_K; ++k)
    CHECK(set_intersect(lat.level_vertices[k], lat.level_admissible[k - 1]).empty());
  for (const auto& n : lat.nodes)
    for (int v : n.cls) CHECK(sim_class(g, v) == n.cls);
}

TEST_CASE("graph laws across the corpus") {
  check_graph_laws(example_graph());
  check_graph_laws(path_graph(4));
  check_graph_laws(null_graph(4));
  check_graph_laws(complete_graph(4));
  std::mt19937_64 rng(12345);
  for (int t = 0; t < 10; ++t) check_graph_laws(random_graph(6, rng));
}

TEST_CASE("operations are deterministic") {
  auto g1 = example_graph();
  auto g2 = example_graph();
  for (int x = 0; x < g1.size(); ++x) {
    CHECK(admissible(g1, x) == admissible(g2, x));
    CHECK(sim_class(g1, x) == sim_class(g2, x));
  }
  auto l1 = build_lattice(g1), l2 = build_lattice(g2);
  CHECK(l1.cover_edges == l2.cover_edges);
  CHECK(l1.transversal == l2.transversal);
}
