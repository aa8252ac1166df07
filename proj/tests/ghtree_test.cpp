#include <gtest/gtest.h>

#include <cmath>

#include "sndp/ghtree.hpp"
#include "sndp/reference.hpp"
#include "support.hpp"

namespace sndp {
namespace {

using testing::Rng;

TEST(MinCut, TriangleUnitWeights) {
  auto g = testing::triangle();
  auto cut = min_cut(*g, EdgeWeights<double>(*g, 1.0), 0, 1);
  EXPECT_DOUBLE_EQ(cut.value, 2.0);
  EXPECT_TRUE(cut.source_side[0]);
  EXPECT_FALSE(cut.source_side[1]);
}

TEST(MinCut, PathBottleneck) {
  Graph g(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  EdgeWeights<Rational> w(std::vector<Rational>{2, 3});
  auto cut = min_cut(g, w, 0, 2);
  EXPECT_EQ(cut.value, 2);
  EXPECT_EQ(cut.cut, Cut::from_members(3, {0}));
}

TEST(MinCut, SameTerminalRejected) {
  auto g = testing::triangle();
  EXPECT_THROW(min_cut(*g, EdgeWeights<double>(*g, 1.0), 1, 1), InputError);
}

TEST(MinCut, MatchesBruteForce) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = testing::uniform(rng, 2, 8);
    auto g = testing::random_graph(rng, n, 0.4);
    auto w = testing::random_fraction_weights<Rational>(rng, *g);
    const VertexId s = testing::uniform(rng, 0, n - 1);
    VertexId t = testing::uniform(rng, 0, n - 2);
    if (t >= s) ++t;
    auto cut = min_cut(*g, w, s, t);
    EXPECT_EQ(cut.value, reference::brute_min_cut(*g, w, s, t));
    EXPECT_EQ(cut.value, cut_value(*g, w, cut.cut));
  }
}

TEST(GomoryHu, StarIsItsOwnTree) {
  Graph g(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  auto tree = gomory_hu(g, EdgeWeights<Rational>(g, Rational(1)));
  ASSERT_EQ(tree.edges().size(), 3U);
  for (const auto& e : tree.edges()) {
    EXPECT_EQ(e.u, 0);
    EXPECT_EQ(e.weight, 1);
    EXPECT_EQ(e.side, Cut::from_members(4, {e.v}));
  }
}

TEST(GomoryHu, TriangleWeightsAreTwo) {
  auto g = testing::triangle();
  auto tree = gomory_hu(*g, EdgeWeights<Rational>(*g, Rational(1)));
  ASSERT_EQ(tree.edges().size(), 2U);
  for (const auto& e : tree.edges()) EXPECT_EQ(e.weight, 2);
}

TEST(GomoryHu, DisconnectedPairsGetZero) {
  Graph g(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  auto tree = gomory_hu(g, EdgeWeights<Rational>(g, Rational(1)));
  EXPECT_EQ(tree.path_min(0, 2), 0);
  EXPECT_EQ(tree.path_min(0, 1), 1);
}

template <class T>
void check_tree(const Graph& g, const EdgeWeights<T>& w, const GomoryHuTree<T>& tree) {
  const int n = g.num_vertices();
  ASSERT_EQ(static_cast<int>(tree.edges().size()), n - 1);
  for (const auto& e : tree.edges()) {
    const T stored = cut_value(g, w, e.side);
    if constexpr (is_inexact_v<T>) {
      EXPECT_LE(std::abs(stored - e.weight), 1e-9 * std::max(1.0, std::abs(stored)));
    } else {
      EXPECT_EQ(stored, e.weight);
    }
    EXPECT_NE(e.side.contains(e.u), e.side.contains(e.v));
  }
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) {
      const T brute = reference::brute_min_cut(g, w, u, v);
      const T tree_min = tree.path_min(u, v);
      if constexpr (is_inexact_v<T>) {
        EXPECT_LE(std::abs(brute - tree_min), 1e-9 * std::max(1.0, std::abs(brute)));
      } else {
        EXPECT_EQ(brute, tree_min);
      }
    }
}

TEST(GomoryHu, RandomGraphsRational) {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = testing::uniform(rng, 2, 8);
    auto g = testing::random_graph(rng, n, 0.4);
    auto w = testing::random_fraction_weights<Rational>(rng, *g);
    check_tree(*g, w, gomory_hu(*g, w));
  }
}

TEST(GomoryHu, RandomGraphsDouble) {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = testing::uniform(rng, 2, 8);
    auto g = testing::random_graph(rng, n, 0.4);
    EdgeWeights<double> w(*g, 0.0);
    for (const Edge& e : g->edges()) w[e.id] = std::uniform_real_distribution<double>(0.0, 5.0)(rng);
    check_tree(*g, w, gomory_hu(*g, w));
  }
}

TEST(MinRatioCut, TriangleHalfWeights) {
  auto g = testing::triangle();
  PairwiseFunction f(testing::all_pairs(3, 1));
  auto best = min_ratio_cut(*g, EdgeWeights<Rational>(*g, Rational(1, 2)), f);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->ratio(), 1);
}

TEST(MinRatioCut, TriangleOneFreeEdge) {
  auto g = testing::triangle();
  PairwiseFunction f(testing::all_pairs(3, 1));
  // ab = 0, bc = 1, ac = 1.
  EdgeWeights<Rational> w(std::vector<Rational>{0, 1, 1});
  auto best = min_ratio_cut(*g, w, f);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->ratio(), 1);
  EXPECT_EQ(best->ratio(), reference::brute_min_ratio(*g, w, f)->value);
}

TEST(MinRatioCut, NoneWhenFIsZero) {
  auto g = testing::triangle();
  PairwiseFunction f(RequirementMatrix(3));
  EXPECT_FALSE(min_ratio_cut(*g, EdgeWeights<double>(*g, 1.0), f).has_value());
}

TEST(MinRatioCut, EqualsExhaustiveMinimum) {
  Rng rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::uniform(rng, 2, 10);
    auto g = testing::random_graph(rng, n, 0.35);
    auto f = testing::pairwise(testing::random_requirements(rng, n, 5, 0.3));
    auto w = testing::random_fraction_weights<Rational>(rng, *g);
    auto fast = min_ratio_cut(*g, w, *f);
    auto brute = reference::brute_min_ratio(*g, w, *f);
    ASSERT_EQ(fast.has_value(), brute.has_value());
    if (fast) {
      EXPECT_EQ(fast->ratio(), brute->value);
    }
  }
}

// Brute-force ratio cross-checked by one max flow per pair: for pairwise f
// the optimum separates some pair (u,v) with r(u,v) = f(S).
TEST(MinRatioCut, BruteForceAgreesWithPerPairFlows) {
  Rng rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::uniform(rng, 2, 8);
    auto g = testing::random_graph(rng, n, 0.4);
    auto r = testing::random_requirements(rng, n, 4, 0.4);
    PairwiseFunction f(r);
    auto w = testing::random_fraction_weights<Rational>(rng, *g);
    std::optional<Rational> flows;
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v) {
        if (r(u, v) == 0) continue;
        Rational ratio = min_cut(*g, w, u, v).value / r(u, v);
        if (!flows || ratio < *flows) flows = ratio;
      }
    auto brute = reference::brute_min_ratio(*g, w, f);
    ASSERT_EQ(flows.has_value(), brute.has_value());
    if (flows) {
      EXPECT_EQ(*flows, brute->value);
    }
  }
}

TEST(MinRatioCut, TreeCutsDominateEveryCut) {
  Rng rng(26);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = testing::uniform(rng, 3, 8);
    auto g = testing::random_graph(rng, n, 0.4);
    auto f = testing::pairwise(testing::random_requirements(rng, n, 4, 0.4));
    auto w = testing::random_fraction_weights<Rational>(rng, *g);
    auto tree = gomory_hu(*g, w);
    for (const Cut& s : reference::canonical_cuts(n)) {
      Requirement best = 0;
      for (const auto& e : tree.edges())
        if (s.contains(e.u) != s.contains(e.v)) best = std::max(best, (*f)(e.side));
      EXPECT_LE((*f)(s), best);
    }
  }
}

}  // namespace
}  // namespace sndp
