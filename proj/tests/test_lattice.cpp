#include <gtest/gtest.h>

#include <random>

#include "kgraph/families.hpp"
#include "kgraph/lattice.hpp"
#include "kgraph/monoid.hpp"
#include "kgraph/replay.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"

using namespace kg;

TEST(Lattice, LoopWithTailHasThreeSets) {
  auto g = looptail();
  auto l = all_hs_subsets(g);
  auto a = g.vertex("a"), b = g.vertex("b");
  ASSERT_EQ(l.sets.size(), 3u);
  EXPECT_EQ(l.sets[0], VertexSet{});
  EXPECT_EQ(l.sets[1], VertexSet{b});
  EXPECT_EQ(l.sets[2], (VertexSet{a, b}));
  EXPECT_EQ(l.meet[1][2], 1u);
  EXPECT_EQ(l.join[0][1], 1u);
  EXPECT_EQ(l.index_of(VertexSet{b}), 1u);
}

TEST(Lattice, MeetAndJoinAreIntersectionAndClosedUnion) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = kgtest::random_two_graph(rng);
    auto l = all_hs_subsets(g);
    for (std::size_t i = 0; i < l.sets.size(); ++i)
      for (std::size_t j = 0; j < l.sets.size(); ++j) {
        VertexSet inter, uni;
        std::set_intersection(l.sets[i].begin(), l.sets[i].end(), l.sets[j].begin(), l.sets[j].end(),
                              std::inserter(inter, inter.end()));
        std::set_union(l.sets[i].begin(), l.sets[i].end(), l.sets[j].begin(), l.sets[j].end(),
                       std::inserter(uni, uni.end()));
        EXPECT_EQ(l.sets[l.meet[i][j]], inter);
        EXPECT_EQ(l.sets[l.join[i][j]], saturated_hereditary_closure(g, uni).vertices);
      }
  }
}

TEST(Lattice, ClosureOfATailVertex) {
  auto g = ex62();
  auto h = saturated_hereditary_closure(g, {g.vertex("u")});
  EXPECT_EQ(h.vertices, (VertexSet{g.vertex("u"), g.vertex("v")}));
  EXPECT_TRUE(h.hereditary && h.saturated);
  EXPECT_EQ(hereditary_closure(g, {g.vertex("u")}), VertexSet{g.vertex("u")});
  EXPECT_THROW(saturated_hereditary_closure(ex53(), {}), PreconditionError);
}

TEST(Lattice, SizeLimitIsEnforced) {
  auto big = disjoint_union(disjoint_union(looptail(), looptail()), looptail());
  EXPECT_THROW(all_hs_subsets(big, 4), ResourceError);
  EXPECT_EQ(all_hs_subsets(big).sets.size(), 27u);
}

TEST(BooleanReach, ElementsAreSupportsOfTheirDegrees) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = kgtest::random_two_graph(rng, 3, 2);
    BooleanReach reach(g);
    std::set<BoolMatrix> mats;
    for (const auto& e : reach.elements()) {
      EXPECT_EQ(e.matrix, support_matrix(g, e.degree));
      mats.insert(e.matrix);
    }
    EXPECT_EQ(mats.size(), reach.elements().size());
    for (const auto& m : degrees_up_to(Offset{4, 4})) EXPECT_TRUE(mats.count(support_matrix(g, m)));
  }
}

TEST(IdealMembership, SupportInsideOrEscapes) {
  auto g = looptail();
  auto a = g.vertex("a"), b = g.vertex("b");
  auto in = ideal_membership(g, gen(b, Offset{0, 0}, 2), {b});
  ASSERT_TRUE(in.is_yes());
  EXPECT_TRUE(replay(g, in));
  auto out = ideal_membership(g, gen(a, Offset{1, 0}), {b});
  ASSERT_TRUE(out.is_no());
  EXPECT_TRUE(replay(g, out));
  EXPECT_TRUE(ideal_membership(g, gen(a, Offset{0, 0}), {a, b}).is_yes());
}

TEST(OrderIdeals, RhoEtaRoundTrip) {
  for (const auto& [name, g] : fixtures()) {
    if (g.has_sources()) continue;
    for (const auto& h : all_hs_subsets(g).sets) {
      auto j = rho(g, h);
      EXPECT_EQ(j.generator.vertices, h) << name;
      EXPECT_EQ(eta(g, j), h) << name;
    }
  }
}

TEST(OrderIdeals, PrimeIdealsAreMaximalTails) {
  auto g = disjoint_union(ex62(), ex64());
  VertexSet left{g.vertex("L.u"), g.vertex("L.v")};
  VertexSet right{g.vertex("R.v")};
  EXPECT_FALSE(is_prime_ideal(g, {}));
  EXPECT_TRUE(is_prime_ideal(g, left));
  EXPECT_TRUE(is_prime_ideal(g, right));
  EXPECT_TRUE(is_prime_ideal(ex62(), {}));
  auto lt = looptail();
  EXPECT_TRUE(is_prime_ideal(lt, {}));
  EXPECT_TRUE(is_prime_ideal(lt, {lt.vertex("b")}));
  EXPECT_THROW(is_prime_ideal(lt, {lt.vertex("a"), lt.vertex("b")}), PreconditionError);
  EXPECT_THROW(is_prime_ideal(lt, {lt.vertex("a")}), PreconditionError);
}

TEST(OrderIdeals, QuotientMapDropsTheIdeal) {
  auto g = looptail();
  auto a = g.vertex("a"), b = g.vertex("b");
  auto x = gen(a, Offset{0, 0}) + gen(b, Offset{1, 0}, 3);
  auto y = quotient_monoid_map(g, {b}, x);
  auto q = quotient_graph(g, {b});
  EXPECT_EQ(y, gen(q.vertex("a"), Offset{0, 0}));
  // The map respects equality: a(0) = a(e1) + b(e1) in T, so both sides agree in the quotient.
  auto lhs = quotient_monoid_map(g, {b}, gen(a, Offset{0, 0}));
  auto rhs = quotient_monoid_map(g, {b}, gen(a, Offset{1, 0}) + gen(b, Offset{1, 0}));
  EXPECT_TRUE(t_equal(q, lhs, rhs).is_yes());
}

TEST(TruncatedClosure, GridSampleIsClosedUnderSaturation) {
  auto g = grid(2);
  auto sample = grid_box(2, 2);
  LazyVertexSet s(sample.begin(), sample.end());
  auto c = truncated_closure(g, {LazyVertex{0, 0}}, s);
  EXPECT_EQ(c, s);
  auto corner = truncated_closure(g, {LazyVertex{2, 2}}, s);
  EXPECT_TRUE(corner.count(LazyVertex{2, 2}));
  EXPECT_TRUE(corner.count(LazyVertex{1, 1}));
}
