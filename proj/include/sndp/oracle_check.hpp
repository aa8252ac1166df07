#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "sndp/covering_mw.hpp"
#include "sndp/error.hpp"
#include "sndp/ghtree.hpp"
#include "sndp/jain.hpp"
#include "sndp/random_instances.hpp"
#include "sndp/reference.hpp"
#include "sndp/row_oracle.hpp"
#include "sndp/separation.hpp"

namespace sndp {

struct OracleCheckOptions {
  int max_vertices = 7;
  int trials = 200;
  std::uint64_t seed = 0;
  double epsilon = 0.25;
};

struct PropertyResult {
  std::string name;
  long checked = 0;
  long failed = 0;
  std::string first_failure;

  bool passed() const { return failed == 0; }
};

namespace detail {

class PropertyLog {
 public:
  explicit PropertyLog(std::string name) { result_.name = std::move(name); }

  void expect(bool ok, int trial, const std::string& what) {
    ++result_.checked;
    if (ok) return;
    if (result_.failed++ == 0) result_.first_failure = "trial " + std::to_string(trial) + ": " + what;
  }

  PropertyResult take() { return std::move(result_); }

 private:
  PropertyResult result_;
};

inline std::string str(const Rational& q) {
  std::ostringstream out;
  out << q;
  return out.str();
}

inline reference::ExplicitLP exact_lp_of(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                                         const std::vector<double>& c) {
  reference::ExplicitLP lp;
  for (const auto& row : a) {
    std::vector<Rational> r;
    for (double v : row) r.emplace_back(v);
    lp.a.push_back(std::move(r));
  }
  for (double v : b) lp.b.emplace_back(v);
  for (double v : c) lp.c.emplace_back(v);
  return lp;
}

}  // namespace detail

// Cross-checks every fast routine against the exhaustive reference oracles on
// seeded random instances. Brute force over all cuts, so |V| is capped.
inline std::vector<PropertyResult> oracle_check(const OracleCheckOptions& o) {
  if (o.max_vertices < 2 || o.max_vertices > reference::kMaxCutVertices) {
    throw InputError("oracle-check needs 2 <= max-vertices <= " + std::to_string(reference::kMaxCutVertices));
  }
  if (o.trials < 1) throw InputError("oracle-check needs at least one trial");
  if (!(o.epsilon > 0.0)) throw InputError("epsilon must be positive");
  using random::Rng;
  using random::uniform;
  Rng rng(o.seed);

  detail::PropertyLog gh("gomory-hu"), ratio("min-ratio-cut"), violated("violated-set"), bracket("gamma-bracket"),
      shortest("shortest-row"), certify("certify-feasibility"), mw("mw-covering-lp"), lp("residual-lp"),
      e2e("end-to-end");

  random::ResidualOptions ro;
  ro.max_vertices = o.max_vertices;

  for (int t = 0; t < o.trials; ++t) {
    {
      const int n = uniform(rng, 2, o.max_vertices);
      auto g = random::random_graph(rng, n, 0.4);
      EdgeWeights<Rational> w(*g, Rational(0));
      for (const Edge& e : g->edges()) w[e.id] = Rational(uniform(rng, 1, 40), uniform(rng, 1, 8));
      auto tree = gomory_hu(*g, w);
      for (const auto& te : tree.edges()) {
        gh.expect(cut_value(*g, w, te.side) == te.weight, t, "stored bipartition value differs from tree weight");
      }
      for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) {
          const Rational brute = reference::brute_min_cut(*g, w, u, v);
          gh.expect(brute == tree.path_min(u, v), t,
                    "min cut " + std::to_string(u) + "-" + std::to_string(v) + " = " + detail::str(brute));
        }

      PairwiseFunction f(random::random_requirements(rng, n, 4));
      auto fast = min_ratio_cut(tree, f);
      auto brute = reference::brute_min_ratio(*g, w, f);
      ratio.expect(fast.has_value() == brute.has_value() && (!fast || fast->ratio() == brute->value), t,
                   "tree ratio differs from exhaustive minimum");

      EdgeWeights<std::int64_t> z(*g, 0);
      for (const Edge& e : g->edges()) z[e.id] = uniform(rng, 0, 3);
      auto found = find_violated_set(*g, f, z);
      auto want = reference::brute_violated_set(*g, f, z);
      bool ok = found.has_value() == want.has_value();
      if (ok && found) {
        std::int64_t crossing = 0;
        for (const Edge& e : g->edges())
          if (crosses(e, *found)) crossing += z[e.id];
        ok = crossing < f(*found);
      }
      violated.expect(ok, t, "separation disagrees with exhaustive scan");
    }

    {
      ro.pin = t % 2 == 0;
      ro.z_max = t % 3 == 0 ? 0 : 2;
      auto res = random::random_residual(rng, ro);
      auto x = random::random_positive_x(rng, res);
      auto xq = random::exact(x);
      const double m = res.graph().num_edges();

      auto b = gamma_bounds(res, x);
      auto brute_cut = reference::brute_shortest_cut_row(res, xq);
      bracket.expect(b && brute_cut && Rational(b->gamma_min) <= brute_cut->value &&
                         Rational(b->gamma_max) * Rational(1 + 1e-12) >= brute_cut->value &&
                         b->gamma_max / b->gamma_min <= m * m / 2 * (1 + 1e-12),
                     t, "bracket misses the shortest cut row");

      const double zeta = t % 2 == 0 ? 0.05 : 0.15;
      auto r = shortest_row(res, x, zeta);
      auto brute_row = reference::brute_shortest_row(res, xq);
      shortest.expect(brute_row && Rational(r.length) <= *brute_row * Rational((1 + zeta) * (1 + 1e-12)), t,
                      "row longer than (1+zeta) times the minimum");

      EdgeWeights<Rational> xr(res.graph(), Rational(0));
      for (EdgeId e : res.columns()) xr[e] = Rational(uniform(rng, 0, 6), 4);
      certify.expect(!certify_feasibility(res, xr).has_value() == reference::brute_lp_feasible(res, xr), t,
                     "feasibility certificate disagrees with exhaustive check");
    }

    {
      const int n = uniform(rng, 1, 8);
      const int rows = uniform(rng, 1, 8);
      std::vector<std::vector<double>> a(rows, std::vector<double>(n, 0.0));
      std::vector<double> bv, c;
      for (int i = 0; i < rows; ++i) {
        bool any = false;
        for (int j = 0; j < n; ++j)
          if (random::coin(rng, 0.5)) {
            a[i][j] = uniform(rng, 1, 10);
            any = true;
          }
        if (!any) a[i][uniform(rng, 0, n - 1)] = uniform(rng, 1, 10);
        bv.push_back(uniform(rng, 1, 10));
      }
      for (int j = 0; j < n; ++j) c.push_back(uniform(rng, 1, 10));
      ExplicitCoveringOracle oracle(a, bv, c);
      const double zeta = 0.1;
      auto r = mw_solve(oracle, MwOptions{zeta});
      auto exact = reference::exact_lp_min(detail::exact_lp_of(a, bv, c));
      std::vector<Rational> load(n, Rational(0));
      for (const auto& d : r.duals)
        for (const auto& [j, v] : d.row.coeffs) load[j] += Rational(v) * Rational(d.y_scaled);
      bool dual_ok = Rational(r.dual_bound) <= exact.value;
      for (int j = 0; j < n; ++j) dual_ok = dual_ok && load[j] <= Rational(c[j]);
      mw.expect(Rational(r.primal_cost) <= exact.value * Rational(1 + 4 * zeta) && dual_ok, t,
                "MW ratio or dual certificate out of bounds");
    }

    {
      random::ResidualOptions lo = ro;
      lo.max_vertices = std::min(o.max_vertices, 6);
      lo.pin = t % 2 == 1;
      auto res = random::random_residual(rng, lo);
      const double target = std::log1p(o.epsilon) / res.graph().num_edges();
      auto sol = solve_residual_lp(res, target);
      auto exact = reference::exact_lp_min(reference::enumerate_constraints(res).lp);
      lp.expect(exact.status == reference::LpStatus::optimal &&
                    reference::brute_lp_feasible(res, random::exact(sol.x)) &&
                    Rational(sol.cost) <= exact.value * Rational(1 + target) && Rational(sol.dual_bound) <= exact.value,
                t, "residual LP not within (1+target) of the exact optimum");
    }

    {
      // Resampled until the exact IP oracle applies.
      int n = 0;
      std::shared_ptr<const Graph> g;
      do {
        n = uniform(rng, 2, o.max_vertices);
        g = random::random_graph(rng, n, 0.35, 10, 0.0);
      } while (g->num_edges() > reference::kMaxIpEdges);
      auto rm = random::random_requirements(rng, n, 3);
      auto f = std::make_shared<const PairwiseFunction>(rm);
      JainOptions jo;
      jo.epsilon = o.epsilon;
      bool residual_ok = true;
      auto report = solve(g, f, jo, [&](const IterationAudit& a) {
        residual_ok = residual_ok && static_cast<double>(reference::brute_max_rhs(*g, *f, a.z)) <= g->num_edges() / 2.0;
      });
      const ResidualInstance lp1(g, f, {}, EdgeWeights<std::int64_t>(*g, 0));
      Rational lp_opt = 0;
      if (rm.max_value() > 0) lp_opt = reference::exact_lp_min(reference::enumerate_constraints(lp1).lp).value;
      bool ok = reference::brute_feasible(*g, *f, report.z) && residual_ok &&
                report.outer_iterations <= g->num_edges() &&
                Rational(report.cost) <= Rational(2 * (1 + o.epsilon)) * lp_opt &&
                Rational(report.lower_bound) <= lp_opt;
      ok = ok && report.cost >= reference::exact_ip_min(*g, *f, rm.max_value()).value;
      e2e.expect(ok, t, "rounded solution fails feasibility, ratio, IP bound or residual requirement bound");
    }
  }
  return {gh.take(), ratio.take(), violated.take(), bracket.take(), shortest.take(),
          certify.take(), mw.take(), lp.take(), e2e.take()};
}

}  // namespace sndp
