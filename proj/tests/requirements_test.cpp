#include <gtest/gtest.h>

#include "sndp/reference.hpp"
#include "sndp/requirements.hpp"
#include "sndp/separation.hpp"
#include "support.hpp"

namespace sndp {
namespace {

using testing::Rng;

// Symmetry is built into canonical cuts; check maximality and f(V) = 0
// through disjoint unions over every pair of disjoint nonempty subsets.
void expect_proper(const ProperFunction& f) {
  const int n = f.ground_size();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  auto value = [&](std::uint64_t mask) -> Requirement {
    if (mask == 0 || mask == full) return 0;
    return f(Cut::from_mask(n, mask));
  };
  for (std::uint64_t a = 1; a < full; ++a) {
    EXPECT_EQ(value(a), value(full ^ a));
    const std::uint64_t rest = full ^ a;
    for (std::uint64_t b = rest; b; b = (b - 1) & rest) {
      EXPECT_LE(value(a | b), std::max(value(a), value(b)));
    }
  }
}

TEST(RequirementMatrix, RejectsBadEntries) {
  RequirementMatrix r(3);
  EXPECT_THROW(r.set(1, 1, 1), InputError);
  EXPECT_THROW(r.set(0, 1, -1), InputError);
  EXPECT_THROW(r.set(0, 5, 1), InputError);
  EXPECT_THROW(r.set(0, 1, kMaxRequirement + 1), InputError);
  r.set(0, 2, 4);
  EXPECT_EQ(r(2, 0), 4);
}

TEST(EvalF, Examples) {
  PairwiseFunction tri(testing::all_pairs(3, 1));
  EXPECT_EQ(eval_f(tri, Cut::from_members(3, {0})), 1);

  RequirementMatrix r(4);
  r.set(0, 2, 3);
  PairwiseFunction f(r);
  EXPECT_EQ(eval_f(f, Cut::from_members(4, {0, 1})), 3);
  EXPECT_EQ(eval_f(f, Cut::from_members(4, {1})), 0);
  EXPECT_EQ(eval_f(f, Cut::from_members(4, {3})), 0);
}

TEST(EvalF, WrongGroundSetRejected) {
  PairwiseFunction f(testing::all_pairs(3, 1));
  EXPECT_THROW(f(Cut::from_members(4, {1})), InputError);
}

TEST(ProperFunction, PairwiseIsProperExhaustively) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = testing::uniform(rng, 2, 8);
    PairwiseFunction f(testing::random_requirements(rng, n, 4));
    expect_proper(f);
  }
}

TEST(ProperFunction, ContractedIsProperAndMatchesPreimage) {
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = testing::uniform(rng, 3, 8);
    auto g = testing::random_graph(rng, n, 0.5);
    auto f = testing::pairwise(testing::random_requirements(rng, n, 4));
    Graph current = *g;
    std::shared_ptr<const ProperFunction> fk = f;
    std::vector<VertexId> to_current(n);
    for (VertexId v = 0; v < n; ++v) to_current[v] = v;
    for (int step = 0; step < 2 && current.num_vertices() > 2 && current.num_edges() > 0; ++step) {
      Contraction c = contract_edge(current, current.edges()[0].id);
      for (VertexId& v : to_current) v = c.vertex_map[v];
      fk = ContractedFunction::wrap(fk, c.vertex_map);
      current = std::move(c.graph);
    }
    ASSERT_EQ(fk->ground_size(), current.num_vertices());
    expect_proper(*fk);
    for (const Cut& cut : reference::canonical_cuts(current.num_vertices())) {
      EXPECT_EQ((*fk)(cut), (*f)(preimage(cut, to_current)));
    }
  }
}

TEST(FindViolatedSet, Examples) {
  auto g = testing::triangle();
  PairwiseFunction f(testing::all_pairs(3, 1));
  auto s = find_violated_set(*g, f, EdgeWeights<std::int64_t>(*g, 0));
  ASSERT_TRUE(s.has_value());
  // A singleton or, canonically, the complement of {a}.
  const auto size = s->members().size();
  EXPECT_TRUE(size == 1U || size == 2U);
  EXPECT_EQ(f(*s) - cut_value(*g, EdgeWeights<std::int64_t>(*g, 0), *s), 1);

  EdgeWeights<std::int64_t> path(std::vector<std::int64_t>{1, 1, 0});
  EXPECT_FALSE(find_violated_set(*g, f, path).has_value());
}

TEST(FindViolatedSet, RejectsFractionalOffsets) {
  auto g = testing::triangle();
  PairwiseFunction f(testing::all_pairs(3, 1));
  EXPECT_THROW(find_violated_set(*g, f, EdgeWeights<double>(*g, 0.5)), InputError);
}

TEST(FindViolatedSet, AgreesWithExhaustiveScan) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::uniform(rng, 2, 8);
    auto g = testing::random_graph(rng, n, 0.4);
    auto f = testing::pairwise(testing::random_requirements(rng, n, 4));
    auto z = testing::random_weights<std::int64_t>(rng, *g, 0, 2);
    auto found = find_violated_set(*g, *f, z);
    EXPECT_EQ(found.has_value(), reference::brute_violated_set(*g, *f, z).has_value());
    if (found) {
      EXPECT_GE((*f)(*found) - cut_value(*g, z, *found), 1);
    }
  }
}

}  // namespace
}  // namespace sndp
