#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sndp/covering_mw.hpp"
#include "sndp/error.hpp"
#include "sndp/graph.hpp"
#include "sndp/requirements.hpp"
#include "sndp/row_oracle.hpp"
#include "sndp/separation.hpp"

namespace sndp {

struct LpSolveOptions {
  // First MW step size as a multiple of the target tolerance.
  double initial_factor = 0.5;
  // Halvings of the MW step size allowed before giving up.
  int max_halvings = 12;
  CutRowOracleOptions oracle;
};

struct LpStats {
  long lps = 0;
  long mw_runs = 0;
  long mw_iterations = 0;
  long oracle_calls = 0;
  long gh_builds = 0;
  long pool_hits = 0;
  long fresh_searches = 0;

  LpStats& operator+=(const LpStats& o) {
    lps += o.lps;
    mw_runs += o.mw_runs;
    mw_iterations += o.mw_iterations;
    oracle_calls += o.oracle_calls;
    gh_builds += o.gh_builds;
    pool_hits += o.pool_hits;
    fresh_searches += o.fresh_searches;
    return *this;
  }
};

struct LpSolution {
  // Certified-feasible values by edge id; fixed edges are 0.
  EdgeWeights<double> x;
  double cost = 0.0;
  double dual_bound = 0.0;
  double zeta_mw = 0.0;
  LpStats stats;

  double certified_ratio() const { return cost / dual_bound; }
};

// Solves a residual LP to certified ratio cost / dual_bound <= 1 + target,
// halving the MW step size until the certificate is good enough.
inline LpSolution solve_residual_lp(const ResidualInstance& res, double target,
                                    const LpSolveOptions& options = {}) {
  if (!(target > 0.0)) throw InputError("LP tolerance must be positive");
  double zeta = std::min(0.15, options.initial_factor * target);
  LpSolution out;
  for (int attempt = 0;; ++attempt) {
    CutRowOracle oracle(res, options.oracle);
    MwResult<SndpRow> r = mw_solve(oracle, MwOptions{zeta});
    out.stats.mw_runs += 1;
    out.stats.mw_iterations += r.iterations;
    out.stats.oracle_calls += oracle.stats().calls;
    out.stats.gh_builds += oracle.stats().gh_builds;
    out.stats.pool_hits += oracle.stats().pool_hits;
    out.stats.fresh_searches += oracle.stats().fresh_searches;
    if (r.primal_cost <= (1.0 + target) * r.dual_bound) {
      out.x = res.edge_weights<double>(r.x);
      out.cost = r.primal_cost;
      out.dual_bound = r.dual_bound;
      out.zeta_mw = zeta;
      out.stats.lps = 1;
      return out;
    }
    if (attempt >= options.max_halvings) {
      throw InvariantError("lp-certified-ratio",
                           "MW could not certify the residual LP within the requested tolerance");
    }
    zeta /= 2.0;
  }
}

enum class Selection {
  // Solve (LP_g) for every free g and keep the cheapest.
  all,
  // Solve the unpinned residual LP first and accept the first candidate
  // whose cost is within (1 + target) of its dual bound.
  certified,
};

struct JainOptions {
  double epsilon = 0.1;
  // Overrides ln(1+epsilon)/|E| as the per-LP tolerance.
  std::optional<double> lp_tolerance;
  Selection selection = Selection::all;
  int jobs = 1;
  LpSolveOptions lp;
  // Rounded values are ceil(x - tolerance) so that values a hair above an
  // integer, left by the feasibility scaling, are not bumped up.
  double ceil_tolerance = 1e-6;
};

struct IterationAudit {
  int k = 0;
  // Edge pinned by the accepted LP, or none for the unpinned residual LP.
  std::optional<EdgeId> chosen;
  double lp_cost = 0.0;
  double lp_dual = 0.0;
  double zeta_mw = 0.0;
  long candidates = 0;
  std::vector<EdgeId> rounded;
  std::vector<EdgeId> dropped;
  EdgeWeights<double> x;
  EdgeWeights<std::int64_t> z;
  std::vector<bool> fixed;
  LpStats stats;
};

struct SolveReport {
  EdgeWeights<std::int64_t> z;
  double cost = 0.0;
  // Dual certificate on the optimum of the LP relaxation.
  double lower_bound = 0.0;
  double certified_ratio = 1.0;
  int outer_iterations = 0;
  double zeta_target = 0.0;
  bool verified = false;
  std::vector<EdgeId> prefixed;
  std::vector<IterationAudit> audit;
  LpStats stats;
  long separation_gh_builds = 0;
  double wall_seconds = 0.0;
};

// z(delta(S)) >= f(S) for every S.
inline bool verify_integral(const Graph& g, const ProperFunction& f, const EdgeWeights<std::int64_t>& z,
                            long* gh_builds = nullptr) {
  return !find_violated_set(g, f, z, gh_builds).has_value();
}

namespace detail {

struct Candidate {
  std::optional<EdgeId> pin;
  LpSolution lp;
};

template <class Fn>
std::vector<LpSolution> run_batch(const std::vector<std::optional<EdgeId>>& pins, int jobs, Fn solve) {
  std::vector<LpSolution> out(pins.size());
  if (jobs <= 1 || pins.size() <= 1) {
    for (std::size_t i = 0; i < pins.size(); ++i) out[i] = solve(pins[i]);
    return out;
  }
  for (std::size_t start = 0; start < pins.size(); start += static_cast<std::size_t>(jobs)) {
    const std::size_t stop = std::min(pins.size(), start + static_cast<std::size_t>(jobs));
    std::vector<std::future<LpSolution>> running;
    for (std::size_t i = start; i < stop; ++i)
      running.push_back(std::async(std::launch::async, solve, pins[i]));
    for (std::size_t i = start; i < stop; ++i) out[i] = running[i - start].get();
  }
  return out;
}

}  // namespace detail

// Iterative rounding with MW-solved residual LPs. The returned z is integral
// and verified feasible.
inline SolveReport solve(std::shared_ptr<const Graph> graph, std::shared_ptr<const ProperFunction> f,
                         const JainOptions& options,
                         const std::function<void(const IterationAudit&)>& observer = nullptr) {
  const auto started = std::chrono::steady_clock::now();
  if (!(options.epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (options.lp_tolerance && !(*options.lp_tolerance > 0.0)) throw InputError("LP tolerance must be positive");
  if (options.jobs < 1) throw InputError("jobs must be at least 1");
  const Graph& g = *graph;
  const Requirement f_max = f->max_value();

  SolveReport report;
  report.z = EdgeWeights<std::int64_t>(g, 0);
  std::vector<bool> fixed(g.edge_id_bound(), false);

  // Infeasible exactly when some demanded cut has no edge at all.
  {
    EdgeWeights<std::int64_t> saturated(g, f_max);
    if (!verify_integral(g, *f, saturated, &report.separation_gh_builds)) {
      throw InputError("instance is infeasible: a cut with positive requirement has no edges");
    }
  }
  if (f_max > 0) {
    for (const Edge& e : g.edges()) {
      if (e.cost == 0.0) {
        report.z[e.id] = f_max;
        fixed[e.id] = true;
        report.prefixed.push_back(e.id);
      }
    }
  }

  const int m = std::max(1, g.num_edges());
  const double target = options.lp_tolerance.value_or(std::log1p(options.epsilon) / m);
  report.zeta_target = target;
  // Solving twice at rho leaves (1+rho)^2 = 1+target for the acceptance test.
  const double rho = options.selection == Selection::certified ? std::sqrt(1.0 + target) - 1.0 : target;

  std::optional<double> lower_bound;
  int k = 0;
  while (find_violated_set(g, *f, report.z, &report.separation_gh_builds)) {
    ++k;
    if (k > g.num_edges()) throw InvariantError("outer-iterations", "more rounding iterations than edges");
    const double rhs_cap = k == 1 ? std::max(g.num_edges() / 2.0, static_cast<double>(f_max)) : g.num_edges() / 2.0;
    const ResidualInstance base(graph, f, fixed, report.z, std::nullopt, rhs_cap);
    if (base.num_columns() == 0) {
      throw InvariantError("free-columns", "violated requirements remain but every edge is fixed");
    }
    auto solve_one = [&base, &options, rho](std::optional<EdgeId> pin) {
      return solve_residual_lp(base.with_pin(pin), rho, options.lp);
    };

    IterationAudit audit;
    audit.k = k;
    std::optional<detail::Candidate> accepted;

    if (options.selection == Selection::certified) {
      LpSolution unpinned = solve_one(std::nullopt);
      audit.stats += unpinned.stats;
      ++audit.candidates;
      const double dual1 = unpinned.dual_bound;
      if (k == 1) lower_bound = dual1;
      const double threshold = (1.0 + target) * dual1;
      double peak = 0.0;
      for (EdgeId e : base.columns()) peak = std::max(peak, unpinned.x[e]);
      std::vector<EdgeId> order = base.columns();
      std::stable_sort(order.begin(), order.end(),
                       [&](EdgeId a, EdgeId b) { return unpinned.x[a] > unpinned.x[b]; });
      if (peak >= 0.5) {
        accepted = detail::Candidate{std::nullopt, std::move(unpinned)};
      } else {
        std::vector<std::optional<EdgeId>> pins(order.begin(), order.end());
        std::optional<detail::Candidate> cheapest;
        for (std::size_t start = 0; start < pins.size() && !accepted; start += options.jobs) {
          const std::size_t stop = std::min(pins.size(), start + static_cast<std::size_t>(options.jobs));
          std::vector<std::optional<EdgeId>> batch(pins.begin() + start, pins.begin() + stop);
          auto results = detail::run_batch(batch, options.jobs, solve_one);
          for (std::size_t i = 0; i < results.size(); ++i) {
            audit.stats += results[i].stats;
            ++audit.candidates;
            if (results[i].cost <= threshold) {
              accepted = detail::Candidate{batch[i], std::move(results[i])};
              break;
            }
            if (!cheapest || results[i].cost < cheapest->lp.cost ||
                (results[i].cost == cheapest->lp.cost && *batch[i] < *cheapest->pin)) {
              cheapest = detail::Candidate{batch[i], results[i]};
            }
          }
        }
        if (!accepted) accepted = std::move(cheapest);
      }
    } else {
      std::vector<std::optional<EdgeId>> pins(base.columns().begin(), base.columns().end());
      auto results = detail::run_batch(pins, options.jobs, solve_one);
      double best_dual = 0.0;
      for (std::size_t i = 0; i < results.size(); ++i) {
        audit.stats += results[i].stats;
        ++audit.candidates;
        if (i == 0 || results[i].dual_bound < best_dual) best_dual = results[i].dual_bound;
        if (!accepted || results[i].cost < accepted->lp.cost) {
          accepted = detail::Candidate{pins[i], results[i]};
        }
      }
      if (k == 1) lower_bound = best_dual;
    }
    if (!accepted) throw InvariantError("candidate-selected", "no residual LP produced a solution");

    const LpSolution& lp = accepted->lp;
    audit.chosen = accepted->pin;
    audit.lp_cost = lp.cost;
    audit.lp_dual = lp.dual_bound;
    audit.zeta_mw = lp.zeta_mw;
    audit.x = lp.x;
    bool grew = false;
    for (EdgeId e : base.columns()) {
      const double v = lp.x[e];
      if (v >= 0.5) {
        const auto rounded = static_cast<std::int64_t>(std::ceil(v - options.ceil_tolerance));
        report.z[e] = std::max<std::int64_t>(1, rounded);
        fixed[e] = true;
        audit.rounded.push_back(e);
        grew = true;
      } else if (v == 0.0) {
        fixed[e] = true;
        audit.dropped.push_back(e);
        grew = true;
      }
    }
    if (!grew) throw InvariantError("fixed-set-grows", "no edge was rounded or dropped");
    audit.z = report.z;
    audit.fixed = fixed;
    report.stats += audit.stats;
    if (observer) observer(audit);
    report.audit.push_back(std::move(audit));
  }

  report.outer_iterations = k;
  report.verified = verify_integral(g, *f, report.z, &report.separation_gh_builds);
  if (!report.verified) throw InvariantError("final-feasibility", "rounded solution violates a requirement");
  for (const Edge& e : g.edges()) report.cost += e.cost * static_cast<double>(report.z[e.id]);
  report.lower_bound = lower_bound.value_or(0.0);
  report.certified_ratio = report.lower_bound > 0.0 ? report.cost / report.lower_bound : 1.0;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

inline SolveReport solve(const Graph& graph, const RequirementMatrix& r, const JainOptions& options) {
  if (r.size() != graph.num_vertices()) throw InputError("requirement matrix and graph disagree on |V|");
  return solve(std::make_shared<const Graph>(graph), std::make_shared<const PairwiseFunction>(r), options);
}

}  // namespace sndp
