#include <gtest/gtest.h>

#include <cmath>

#include "sndp/covering_mw.hpp"
#include "sndp/reference.hpp"
#include "support.hpp"

namespace sndp {
namespace {

using testing::Rng;

reference::ExplicitLP to_exact(const testing::DenseCoveringLP& d) {
  reference::ExplicitLP lp;
  for (const auto& row : d.a) {
    std::vector<Rational> r;
    for (double v : row) r.emplace_back(v);
    lp.a.push_back(std::move(r));
  }
  for (double v : d.b) lp.b.emplace_back(v);
  for (double v : d.c) lp.c.emplace_back(v);
  return lp;
}

// Exact check that sum_i A(i,j) y_scaled(i) <= c(j) for every column.
void expect_dual_feasible(const ExplicitCoveringOracle& oracle, const MwResult<int>& r) {
  std::vector<Rational> load(oracle.num_columns(), Rational(0));
  for (const auto& d : r.duals)
    for (const auto& [j, a] : d.row.coeffs) load[j] += Rational(a) * Rational(d.y_scaled);
  for (int j = 0; j < oracle.num_columns(); ++j) EXPECT_LE(load[j], Rational(oracle.column_cost(j)));
}

TEST(RowLength, Examples) {
  SparseRow row{{{0, 1.0}, {1, 2.0}}, 2.0};
  std::vector<double> ones{1.0, 1.0};
  EXPECT_DOUBLE_EQ(row_length(row, ones), 1.5);
  std::vector<double> zeros{0.0, 0.0};
  EXPECT_DOUBLE_EQ(row_length(row, zeros), 0.0);
  SparseRow single{{{0, 3.0}}, 3.0};
  std::vector<double> x{2.0, 5.0};
  EXPECT_DOUBLE_EQ(row_length(single, x), 2.0);
}

TEST(RowLength, NonPositiveRhsIsADefect) {
  SparseRow row{{{0, 1.0}}, 0.0};
  std::vector<double> x{1.0};
  EXPECT_THROW(row_length(row, x), InvariantError);
}

TEST(MwSolve, SingleCell) {
  ExplicitCoveringOracle oracle({{1.0}}, {1.0}, {1.0});
  auto r = mw_solve(oracle, MwOptions{0.1});
  EXPECT_GE(r.primal_cost, 1.0);
  EXPECT_LE(r.primal_cost, 1.4);
  EXPECT_LE(r.dual_bound, 1.0);
  EXPECT_LE(r.worst_case_dual_bound, r.dual_bound);
  EXPECT_GE(r.x[0], 1.0);
}

TEST(MwSolve, TwoColumnsPreferCheapOne) {
  ExplicitCoveringOracle oracle({{1.0, 1.0}}, {1.0}, {1.0, 2.0});
  auto r = mw_solve(oracle, MwOptions{0.1});
  EXPECT_GE(r.primal_cost, 1.0);
  EXPECT_LE(r.primal_cost, 1.4);
  EXPECT_LE(r.dual_bound, 1.0);
}

TEST(MwSolve, RejectsBadParameters) {
  ExplicitCoveringOracle oracle({{1.0}}, {1.0}, {1.0});
  EXPECT_THROW(mw_solve(oracle, MwOptions{0.2}), InputError);
  EXPECT_THROW(mw_solve(oracle, MwOptions{0.0}), InputError);
  EXPECT_THROW(ExplicitCoveringOracle({{0.0}}, {1.0}, {1.0}), InputError);
  EXPECT_THROW(ExplicitCoveringOracle({{1.0}}, {0.0}, {1.0}), InputError);
}

struct EmptyOracle {
  using RowKey = int;
  int columns = 0;
  int num_columns() const { return columns; }
  double column_cost(int) const { return 1.0; }
  OracleRow<int> approx_shortest_row(std::span<const double>, double) {
    return OracleRow<int>{0, SparseRow{{}, 1.0}, 1.0};
  }
  std::optional<OracleRow<int>> find_short_row(std::span<const double>) { return std::nullopt; }
  void rescale(double) {}
};

TEST(MwSolve, NoColumnsRejected) {
  EmptyOracle o;
  EXPECT_THROW(mw_solve(o, MwOptions{0.1}), InputError);
}

TEST(MwSolve, ZeroRowIsADefect) {
  EmptyOracle o{1};
  EXPECT_THROW(mw_solve(o, MwOptions{0.1}), InvariantError);
}

TEST(MwSolve, ZeroCostColumnRejected) {
  ExplicitCoveringOracle oracle({{1.0}}, {1.0}, {0.0});
  EXPECT_THROW(mw_solve(oracle, MwOptions{0.1}), InputError);
}

TEST(MwSolve, StepInvariants) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = testing::random_covering_lp(rng, 8);
    ExplicitCoveringOracle oracle(d.a, d.b, d.c);
    const double zeta = 0.1;
    long steps = 0;
    MwOptions opts{zeta};
    opts.observer = [&](const MwStep& s) {
      ++steps;
      double coeff_p = 0.0;
      for (const auto& [j, a] : s.row->coeffs)
        if (j == s.column) coeff_p = a;
      ASSERT_GT(coeff_p, 0.0);
      EXPECT_DOUBLE_EQ(s.increment, d.c[s.column] / coeff_p);
      for (const auto& [j, a] : s.row->coeffs) {
        EXPECT_LE(a * s.increment / d.c[j], 1.0 + 1e-12);
        EXPECT_LE(s.x_after[j] / s.x_before[j], 1.0 + zeta + 1e-12);
      }
      EXPECT_GT(s.log_cost_after, s.log_cost_before);
    };
    auto r = mw_solve(oracle, opts);
    EXPECT_EQ(steps, r.iterations);
    EXPECT_LT(r.final_max_cost_share, 1.0 + zeta);
    EXPECT_LE(r.max_load, r.load_cap);
  }
}

TEST(MwSolve, RandomLpsWithinGuaranteeAndDualFeasible) {
  Rng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    auto d = testing::random_covering_lp(rng);
    ExplicitCoveringOracle oracle(d.a, d.b, d.c);
    const auto exact = reference::exact_lp_min(to_exact(d));
    ASSERT_EQ(exact.status, reference::LpStatus::optimal);
    for (double zeta : {0.05, 0.15}) {
      auto r = mw_solve(oracle, MwOptions{zeta});
      EXPECT_LE(Rational(r.primal_cost), exact.value * Rational(1.0 + 4 * zeta));
      EXPECT_LE(Rational(r.dual_bound), exact.value);
      EXPECT_LE(r.dual_bound, r.primal_cost);
      expect_dual_feasible(oracle, r);
      // The returned point is feasible.
      for (int i = 0; i < oracle.num_rows(); ++i) EXPECT_GE(row_length(oracle.row(i), r.x), 1.0);
    }
  }
}

}  // namespace
}  // namespace sndp
