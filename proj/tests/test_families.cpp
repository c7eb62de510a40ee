#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "kgraph/classify.hpp"
#include "kgraph/families.hpp"
#include "kgraph/monoid.hpp"

using namespace kg;

namespace {

// |v E^1 w| counted straight from the 1-graph.
BigMatrix one_graph_adjacency(const KGraph& g, const OneGraph& e) {
  BigMatrix m(g.vertex_count());
  for (const auto& x : e.edges) m(g.vertex(x.range), g.vertex(x.source)) += 1;
  return m;
}

}  // namespace

TEST(Pullback, BothColorsCopyTheOneGraph) {
  for (int n : {1, 2, 4, 5}) {
    auto e = cycle_graph(n);
    auto g = pullback_2graph(e);
    ASSERT_TRUE(g.validated());
    EXPECT_EQ(g.vertex_count(), static_cast<std::size_t>(n));
    EXPECT_EQ(g.edge_count(), 2u * n);
    auto a = one_graph_adjacency(g, e);
    EXPECT_EQ(edge_matrix(g, 1), a);
    EXPECT_EQ(edge_matrix(g, 2), a);
  }
  auto e = arrow_graph();
  auto g = pullback_2graph(e);
  EXPECT_TRUE(g.has_sources());
  EXPECT_EQ(edge_matrix(g, 1), one_graph_adjacency(g, e));
  EXPECT_EQ(edge_matrix(g, 2), one_graph_adjacency(g, e));
}

TEST(Pullback, SquaresSwapColors) {
  auto g = pullback_2graph(cycle_graph(3));
  auto b0 = g.edge_index("e0_b"), r2 = g.edge_index("e2_r");
  // e0 has range c1, source c0; e2 has range c0, source c2.
  auto other = g.refactor(b0, r2);
  ASSERT_TRUE(other);
  EXPECT_EQ(g.edge(other->first).id, "e0_r");
  EXPECT_EQ(g.edge(other->second).id, "e2_b");
}

TEST(Pullback, CycleIsPeriodicAlongTheAntidiagonal) {
  auto g = pullback_2graph(cycle_graph(4));
  auto v = g.vertex("c0");
  EXPECT_TRUE(t_equal(g, gen(v, {1, -1}), gen(v, {0, 0})).is_yes());
  EXPECT_TRUE(t_equal(g, gen(v, {1, 0}), gen(v, {0, 0})).is_no());
}

TEST(LambdaK, OneVertexOneLoopPerColor) {
  for (int k : {1, 2, 3}) {
    auto g = lambda_k(k);
    EXPECT_EQ(g.vertex_count(), 1u);
    EXPECT_EQ(g.edge_count(), static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) EXPECT_EQ(g.edges_into(0, i).size(), 1u);
    EXPECT_FALSE(g.has_sources());
    EXPECT_TRUE(is_leaf(g, 0).is_yes());
  }
  auto g = lambda_k(2);
  EXPECT_TRUE(t_equal(g, gen(0, {1, 0}), gen(0, {0, 0})).is_yes());
  EXPECT_TRUE(t_equal(g, gen(0, {3, -2}), gen(0, {0, 0})).is_yes());
}

TEST(FiniteGrid, SizesAndSources) {
  auto g = finite_grid(2, Degree{2, 3});
  EXPECT_EQ(g.vertex_count(), 12u);
  // color-1 edges into x_{a,b} exist for a < 2, color-2 edges for b < 3.
  EXPECT_EQ(g.edge_count(), 2u * 4 + 3u * 3);
  EXPECT_TRUE(g.has_sources());
  for (std::int64_t a = 0; a <= 2; ++a)
    for (std::int64_t b = 0; b <= 3; ++b) {
      auto v = g.vertex("x" + std::to_string(a) + "_" + std::to_string(b));
      EXPECT_EQ(g.edges_into(v, 1).size(), a < 2 ? 1u : 0u);
      EXPECT_EQ(g.edges_into(v, 2).size(), b < 3 ? 1u : 0u);
    }
  auto one = finite_grid(1, Degree{4});
  EXPECT_EQ(one.vertex_count(), 5u);
  EXPECT_EQ(one.edge_count(), 4u);
}

TEST(LazyGrid, EdgesPointAwayFromTheOrigin) {
  auto g = grid(2);
  auto e = g.edges_into({1, 2}, 2);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].source, (LazyVertex{1, 3}));
  EXPECT_TRUE(g.edges_into({-1, 0}, 1).empty());
  EXPECT_TRUE(is_leaf(g, {0, 0}, 6).is_yes());
  EXPECT_EQ(grid_box(2, 2).size(), 9u);

  auto d = delta_k(2);
  ASSERT_EQ(d.edges_into({-1, 0}, 1).size(), 1u);
  EXPECT_EQ(d.edges_into({-1, 0}, 1)[0].source, (LazyVertex{0, 0}));
}

TEST(LazyGrid, SquaresCommute) {
  auto g = grid(3);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      auto a = g.edges_into({0, 1, 2}, i).at(0);
      auto b = g.edges_into(a.source, j).at(0);
      auto r = g.refactor(a, b);
      ASSERT_TRUE(r);
      EXPECT_EQ(r->first.color, j);
      EXPECT_EQ(r->first.range, a.range);
      EXPECT_EQ(r->second.source, b.source);
      auto back = g.refactor(r->first, r->second);
      ASSERT_TRUE(back);
      EXPECT_EQ(back->first, a);
      EXPECT_EQ(back->second, b);
    }
}

TEST(Bratteli, BranchesInBlueOnly) {
  auto g = rank2_bratteli();
  for (const auto& v : bratteli_vertices(5)) {
    EXPECT_EQ(g.edges_into(v, 1).size(), 2u);
    EXPECT_EQ(g.edges_into(v, 2).size(), 1u);
    EXPECT_EQ(g.level(v), v[0]);
    EXPECT_TRUE(is_leaf(g, v, 3).is_no());
  }
  EXPECT_EQ(bratteli_vertices(4).size(), 15u);
  // The red edge rotates a level; 2^N red steps return home.
  LazyVertex v{2, 1};
  for (int i = 0; i < 4; ++i) v = g.edges_into(v, 2).at(0).source;
  EXPECT_EQ(v, (LazyVertex{2, 1}));
}

TEST(Bratteli, SquaresAreInverse) {
  auto g = rank2_bratteli();
  for (const auto& v : bratteli_vertices(4))
    for (const auto& a : g.edges_into(v, 1))
      for (const auto& b : g.edges_into(a.source, 2)) {
        auto r = g.refactor(a, b);
        ASSERT_TRUE(r);
        EXPECT_EQ(r->first.range, v);
        EXPECT_EQ(r->second.source, b.source);
        EXPECT_EQ(r->first.source, r->second.range);
        auto back = g.refactor(r->first, r->second);
        ASSERT_TRUE(back);
        EXPECT_EQ(back->first, a);
        EXPECT_EQ(back->second, b);
      }
}

TEST(Bratteli, VertexEqualsItsBluePushforward) {
  auto g = rank2_bratteli();
  LazyTElement u(LazyTGen{{1, 0}, {0, 0}});
  LazyTElement pushed;
  for (const auto& e : g.edges_into({1, 0}, 1)) pushed.add(LazyTGen{e.source, {1, 0}});
  EXPECT_TRUE(t_equal(g, u, pushed, 4).is_yes());
  // v = v(e2): the red cycle at level N has period 2^N in color 2 up to the shift.
  LazyTElement v0(LazyTGen{{0, 0}, {0, 0}});
  LazyTElement v1(LazyTGen{{0, 0}, {0, 1}});
  EXPECT_TRUE(t_equal(g, v0, v1, 4).is_yes());
}

TEST(DisjointUnion, CountsAndIndependence) {
  auto a = ex62(), b = ex64();
  auto u = disjoint_union(a, b);
  EXPECT_TRUE(u.validated());
  EXPECT_EQ(u.vertex_count(), a.vertex_count() + b.vertex_count());
  EXPECT_EQ(u.edge_count(), a.edge_count() + b.edge_count());
  EXPECT_TRUE(u.find_vertex("L.u"));
  EXPECT_TRUE(u.find_vertex("R.v"));
  EXPECT_TRUE(is_cofinal(u).is_no());
  for (const auto& name : a.vertex_names()) {
    std::set<std::string> inside, alone;
    for (auto w : descendants(u, u.vertex("L." + name))) inside.insert(u.vertex_name(w));
    for (auto w : descendants(a, a.vertex(name))) alone.insert("L." + a.vertex_name(w));
    EXPECT_EQ(inside, alone) << name;
  }

  auto lu = lazy_disjoint_union(grid(1), grid(1));
  ASSERT_EQ(lu.edges_into({1, 3}, 1).size(), 1u);
  EXPECT_EQ(lu.edges_into({1, 3}, 1)[0].source, (LazyVertex{1, 4}));
}

TEST(Generate, MatchesDirectConstructors) {
  auto same = [](const KGraph& x, const KGraph& y) {
    return x.vertex_names() == y.vertex_names() && x.edge_count() == y.edge_count() &&
           x.square_set().squares.size() == y.square_set().squares.size();
  };
  EXPECT_TRUE(same(generate({"lambda_k", {3}}), lambda_k(3)));
  EXPECT_TRUE(same(generate({"finite_grid", {2, 1, 2}}), finite_grid(2, Degree{1, 2})));
  EXPECT_TRUE(same(generate({"pullback_cycle", {4}}), pullback_2graph(cycle_graph(4))));
  EXPECT_TRUE(same(generate({"pullback_arrow", {}}), pullback_2graph(arrow_graph())));
  for (const auto& [name, g] : fixtures()) EXPECT_TRUE(same(generate({name, {}}), g)) << name;
  EXPECT_THROW(generate({"nope", {}}), std::invalid_argument);
  EXPECT_THROW(generate({"lambda_k", {}}), PreconditionError);
  EXPECT_THROW(generate({"finite_grid", {2, 1}}), PreconditionError);
  auto names = family_names();
  for (const char* n : {"lambda_k", "finite_grid", "pullback_cycle", "pullback_arrow"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end());
}

TEST(Fixtures, AllValidate) {
  for (const auto& [name, g] : fixtures()) {
    EXPECT_TRUE(g.validated()) << name;
    EXPECT_TRUE(validate(g).valid) << name;
  }
}
