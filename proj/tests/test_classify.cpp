#include <gtest/gtest.h>

#include <random>

#include "kgraph/classify.hpp"
#include "kgraph/families.hpp"
#include "kgraph/replay.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"

using namespace kg;

namespace {

void expect_replays(const KGraph& g, const ClassificationReport& r) {
  for (const auto* t : {&r.cofinal, &r.atomic, &r.free_action, &r.aperiodic, &r.strongly_aperiodic, &r.semisimple,
                        &r.socle_essential, &r.graded_basic_ideal_simple, &r.simple})
    if (t->definite()) EXPECT_TRUE(replay(g, *t)) << to_string(t->cert.kind);
}

}  // namespace

TEST(Report, LoopsWithTailAreGradedSimpleOnly) {
  auto g = ex62();
  auto r = kp_report(g);
  EXPECT_TRUE(r.cofinal.is_yes());
  EXPECT_TRUE(r.atomic.is_yes());
  ASSERT_TRUE(r.free_action.is_no());
  EXPECT_EQ(r.free_action.cert.vertices.at(0), g.vertex("u"));
  EXPECT_EQ(normalize_sign(r.free_action.cert.period), (Offset{1, 0}));
  EXPECT_TRUE(r.aperiodic.is_no());
  EXPECT_TRUE(r.graded_basic_ideal_simple.is_yes());
  EXPECT_TRUE(r.simple.is_no());
  EXPECT_TRUE(r.semisimple.is_no());
  EXPECT_TRUE(r.line_points.empty());
  EXPECT_TRUE(derived_flags_consistent(r));
  expect_replays(g, r);
}

TEST(Report, SingleVertexWithThreeAndTwoLoops) {
  auto g = ex64();
  auto r = kp_report(g);
  EXPECT_TRUE(r.atomic.is_no());
  EXPECT_TRUE(r.free_action.is_yes());
  EXPECT_TRUE(r.aperiodic.is_yes());
  EXPECT_TRUE(r.strongly_aperiodic.is_yes());
  EXPECT_TRUE(r.cofinal.is_yes());
  EXPECT_TRUE(r.simple.is_yes());
  EXPECT_TRUE(r.semisimple.is_no());
  EXPECT_TRUE(derived_flags_consistent(r));
  expect_replays(g, r);
}

TEST(Report, CycleIsAtomicButPeriodic) {
  auto g = ex311();
  auto r = kp_report(g);
  EXPECT_TRUE(r.atomic.is_yes());
  EXPECT_TRUE(r.free_action.is_no());
  EXPECT_TRUE(r.aperiodic.is_no());
  EXPECT_TRUE(r.cofinal.is_yes());
  expect_replays(g, r);
}

TEST(Report, SourcesWithholdVerdicts) {
  auto g = ex53();
  auto r = kp_report(g);
  EXPECT_TRUE(r.has_sources);
  for (const auto* t : {&r.cofinal, &r.atomic, &r.free_action, &r.aperiodic, &r.semisimple, &r.simple}) {
    EXPECT_TRUE(t->is_unknown());
    EXPECT_EQ(t->cert.kind, CertKind::Unsupported);
  }
  ASSERT_TRUE(r.lewin_sims);
  EXPECT_GT(r.lewin_sims->pairs, 0u);
  bool v_period = false;
  for (const auto& [v, n] : r.periodic_generators)
    v_period = v_period || (v == g.vertex("v") && normalize_sign(n) == Offset{1, -1});
  EXPECT_TRUE(v_period);
}

TEST(Report, DisjointUnionIsNotCofinal) {
  auto g = disjoint_union(ex64(), ex64());
  auto c = is_cofinal(g);
  ASSERT_TRUE(c.is_no());
  EXPECT_TRUE(replay(g, c));
  auto lt = looptail();
  EXPECT_TRUE(is_cofinal(lt).is_no());
}

TEST(Report, StrongAperiodicityLooksAtQuotients) {
  auto g = disjoint_union(ex62(), ex64());
  auto t = is_strongly_aperiodic(g);
  ASSERT_TRUE(t.is_no());
  EXPECT_TRUE(replay(g, t));
}

TEST(Report, RandomGraphsAgreeWithOracles) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = kgtest::random_two_graph(rng);
    auto r = kp_report(g);
    EXPECT_TRUE(derived_flags_consistent(r));
    ASSERT_TRUE(r.cofinal.definite());
    EXPECT_EQ(r.cofinal.is_yes(), kgtest::brute_hs_subsets(g).size() == 2);
    ASSERT_TRUE(r.atomic.definite());
    EXPECT_EQ(r.atomic.is_yes(), kgtest::oracle_atomic(g, 6));
    if (r.atomic.is_yes() && r.aperiodic.definite() && r.free_action.definite())
      EXPECT_EQ(r.aperiodic.verdict, r.free_action.verdict);
    // Finite graphs without sources have periodic leaf orbits, hence no line points.
    EXPECT_TRUE(r.line_points.empty());
    EXPECT_FALSE(r.semisimple.is_yes());
    expect_replays(g, r);
  }
}

TEST(LazyReport, GridIsSemisimpleOnTheSample) {
  auto g = grid(2);
  auto sample = grid_box(2, 1);
  Bounds b;
  b.depth = 20;
  auto r = lazy_report(g, sample, b);
  EXPECT_EQ(r.line_points.points.size(), sample.size());
  for (const auto& [v, t] : r.line_points.verdicts) {
    EXPECT_TRUE(t.is_yes());
    EXPECT_TRUE(t.bounded);
    EXPECT_TRUE(replay(g, t));
  }
  EXPECT_FALSE(r.periodic);
  EXPECT_EQ(r.line_point_classes, 1u);
  EXPECT_TRUE(r.semisimple.is_yes());
  EXPECT_TRUE(r.semisimple.bounded);
  EXPECT_TRUE(r.cofinal.is_yes());
  EXPECT_TRUE(replay(g, r.semisimple));
  EXPECT_TRUE(replay(g, r.cofinal));
}

TEST(LazyReport, BratteliHasAPeriodicVertex) {
  auto g = rank2_bratteli();
  auto sample = bratteli_vertices(6);
  auto r = lazy_report(g, sample, Bounds{});
  ASSERT_TRUE(r.periodic);
  EXPECT_EQ(r.periodic->second, (Offset{0, 1}));
  EXPECT_TRUE(r.line_points.points.empty());
  EXPECT_TRUE(r.semisimple.is_no());
  EXPECT_TRUE(replay(g, r.semisimple));
  EXPECT_TRUE(r.cofinal.is_yes());
  EXPECT_TRUE(replay(g, r.cofinal));
}

TEST(LazyReport, DisjointGridsHaveTwoLineClasses) {
  auto g = lazy_disjoint_union(grid(2), grid(2));
  std::vector<LazyVertex> pts{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 0, 1}};
  EXPECT_EQ(count_line_point_classes(g, pts, 10), 2u);
  EXPECT_FALSE(is_cofinal(g, pts).is_yes());
}

TEST(LazyReport, AtomicityOnTheSample) {
  auto grid2 = grid(2);
  auto sample = grid_box(2, 2);
  auto yes = is_atomic(grid2, sample, 10);
  ASSERT_TRUE(yes.is_yes());
  EXPECT_TRUE(yes.bounded);
  EXPECT_TRUE(replay(grid2, yes));
  Tri forged = yes;
  forged.cert.numbers.clear();
  EXPECT_FALSE(replay(grid2, forged));
  // No leaves at all: nothing to certify either way.
  auto b = rank2_bratteli();
  EXPECT_TRUE(is_atomic(b, bratteli_vertices(4), 10).is_unknown());
  EXPECT_TRUE(lazy_report(b, bratteli_vertices(3)).atomic.is_unknown());
}
