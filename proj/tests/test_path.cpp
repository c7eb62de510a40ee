#include <gtest/gtest.h>

#include <random>
#include <set>

#include "kgraph/families.hpp"
#include "kgraph/path.hpp"
#include "support/random_graphs.hpp"

using namespace kg;

namespace {

// Paths of degree d(λ) ∨ d(μ) whose initial segments are λ and μ.
std::set<Path> brute_mce(const KGraph& g, const Path& lambda, const Path& mu) {
  std::set<Path> out;
  if (lambda.range != mu.range) return out;
  for (const auto& p : enumerate_paths(g, lambda.range, join(lambda.degree, mu.degree)))
    if (factor(g, p, lambda.degree).first == lambda && factor(g, p, mu.degree).first == mu) out.insert(p);
  return out;
}

}  // namespace

TEST(Path, MakePathNormalizesColorOrder) {
  auto g = ex62();
  auto p = make_path(g, {g.edge_index("f"), g.edge_index("x")});
  auto q = make_path(g, {g.edge_index("e"), g.edge_index("y")});
  EXPECT_EQ(p, q);
  EXPECT_EQ(p.degree, (Offset{1, 1}));
  EXPECT_EQ(source(g, p), g.vertex("u"));
  EXPECT_THROW(make_path(g, {g.edge_index("x"), g.edge_index("f")}), CompositionError);
}

TEST(Path, FactorSegmentCompose) {
  auto g = ex64();
  auto v = g.vertex("v");
  for (const auto& p : enumerate_paths(g, v, Offset{2, 2})) {
    auto [head, tail] = factor(g, p, Offset{1, 1});
    EXPECT_EQ(compose(g, head, tail), p);
    EXPECT_EQ(segment(g, p, Offset{0, 0}, Offset{1, 1}), head);
    EXPECT_EQ(segment(g, p, Offset{1, 1}, Offset{2, 2}), tail);
    auto mid = segment(g, p, Offset{1, 0}, Offset{2, 1});
    EXPECT_EQ(mid.degree, (Offset{1, 1}));
  }
  EXPECT_EQ(enumerate_paths(g, v, Offset{2, 2}).size(), 36u);
  EXPECT_THROW(factor(g, enumerate_paths(g, v, Offset{1, 0})[0], Offset{0, 1}), DegreeError);
}

TEST(Path, ReorderFollowsSquares) {
  auto g = ex64();
  // f_1 g_2 = g_1 f_2
  auto seq = reorder(g, {g.edge_index("f1"), g.edge_index("g2")}, {2, 1});
  EXPECT_EQ(seq, (std::vector<EdgeIndex>{g.edge_index("g1"), g.edge_index("f2")}));
  auto back = reorder(g, seq, {1, 2});
  EXPECT_EQ(back, (std::vector<EdgeIndex>{g.edge_index("f1"), g.edge_index("g2")}));
}

TEST(Mce, EmptyWhenTheCommonSourceIsASource) {
  auto g = ex53();
  auto alpha = edge_path(g, g.edge_index("alpha"));
  auto beta = edge_path(g, g.edge_index("beta"));
  EXPECT_TRUE(mce(g, alpha, beta).empty());
  EXPECT_TRUE(lambda_min(g, alpha, beta).empty());
}

TEST(Mce, PullbackHasUniqueExtensions) {
  auto g = ex311();
  auto u = g.vertex("u");
  auto blue = edge_path(g, g.edges_into(u, 1)[0]);
  auto red = edge_path(g, g.edges_into(u, 2)[0]);
  EXPECT_EQ(mce(g, blue, red).size(), 1u);
}

TEST(Mce, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = kgtest::random_two_graph(rng, 3, 2);
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      auto ls = enumerate_paths(g, v, Offset{1, 0});
      auto ms = enumerate_paths(g, v, Offset{0, 1});
      auto both = enumerate_paths(g, v, Offset{1, 1});
      for (const auto* set : {&ms, &both})
        for (const auto& l : ls)
          for (const auto& m : *set) {
            auto got = mce(g, l, m);
            EXPECT_EQ(std::set<Path>(got.begin(), got.end()), brute_mce(g, l, m));
            auto lm = lambda_min(g, l, m);
            EXPECT_EQ(lm.size(), got.size());
            for (const auto& [a, b] : lm) EXPECT_EQ(compose(g, l, a), compose(g, m, b));
          }
    }
  }
}

TEST(Path, LazyEnumerationCountsGridPaths) {
  auto g = grid(2);
  auto ps = enumerate_paths(g, LazyVertex{0, 0}, Offset{2, 3});
  EXPECT_EQ(ps.size(), 1u);
  auto b = rank2_bratteli();
  EXPECT_EQ(enumerate_paths(b, bratteli_vertices(1)[0], Offset{2, 0}).size(), 4u);
}
