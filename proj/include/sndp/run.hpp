#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sndp/error.hpp"
#include "sndp/instance_io.hpp"
#include "sndp/jain.hpp"
#include "sndp/oracle_check.hpp"

namespace sndp {

enum class Mode { solve, lp_only, oracle_check };

struct RunConfig {
  Mode mode = Mode::solve;
  double epsilon = 0.1;
  // Certify every LP with exact rational arithmetic.
  bool rational = false;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::optional<double> lp_tolerance;
  Selection selection = Selection::all;
  int max_vertices = 7;
  int trials = 200;
};

using Report = nlohmann::ordered_json;

// Key of the report section that may differ between identical runs.
inline constexpr const char* kVolatileSection = "timing";

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::solve: return "solve";
    case Mode::lp_only: return "lp-only";
    case Mode::oracle_check: return "oracle-check";
  }
  return "?";
}

namespace detail {

inline void check_config(const RunConfig& c) {
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) throw InputError("epsilon must be positive");
  if (c.jobs < 1) throw InputError("jobs must be at least 1");
  if (c.lp_tolerance && !(*c.lp_tolerance > 0.0)) throw InputError("LP tolerance must be positive");
}

inline Report config_section(const RunConfig& c) {
  Report out;
  out["epsilon"] = c.epsilon;
  out["numeric"] = c.rational ? "rational" : "double";
  out["seed"] = c.seed;
  if (c.mode != Mode::oracle_check) {
    out["lp_tolerance"] = c.lp_tolerance ? Report(*c.lp_tolerance) : Report(nullptr);
    out["selection"] = c.selection == Selection::all ? "all" : "certified";
  } else {
    out["max_vertices"] = c.max_vertices;
    out["trials"] = c.trials;
  }
  return out;
}

inline Report instance_section(const Instance& inst) {
  return Report{{"name", inst.display_name()},
                {"vertices", inst.vertices.size()},
                {"edges", inst.edges.size()},
                {"requirements", inst.requirements.size()}};
}

inline Report stats_section(const LpStats& s) {
  Report out;
  out["lps"] = s.lps;
  out["mw_runs"] = s.mw_runs;
  out["mw_iterations"] = s.mw_iterations;
  out["oracle_calls"] = s.oracle_calls;
  out["gh_builds"] = s.gh_builds;
  out["fresh_searches"] = s.fresh_searches;
  out["pool_hits"] = s.pool_hits;
  return out;
}

inline Report edge_list(const std::vector<EdgeId>& ids) {
  Report out = Report::array();
  for (EdgeId e : ids) out.push_back(e);
  return out;
}

inline JainOptions jain_options(const RunConfig& c) {
  JainOptions o;
  o.epsilon = c.epsilon;
  o.lp_tolerance = c.lp_tolerance;
  o.selection = c.selection;
  o.jobs = c.jobs;
  o.lp.oracle.exact_certify = c.rational;
  return o;
}

inline Report run_solve(const RunConfig& c, const Instance& inst) {
  auto graph = inst.graph();
  auto f = std::make_shared<const PairwiseFunction>(inst.requirement_matrix());
  const SolveReport r = solve(graph, f, jain_options(c));

  Report result;
  result["cost"] = r.cost;
  result["lower_bound"] = r.lower_bound;
  result["certified_ratio"] = r.certified_ratio;
  result["guarantee"] = 2.0 * (1.0 + c.epsilon);
  result["outer_iterations"] = r.outer_iterations;
  result["verified"] = r.verified;
  result["lp_tolerance"] = r.zeta_target;
  Report z = Report::array();
  for (const Edge& e : graph->edges()) z.push_back(r.z[e.id]);
  result["z"] = z;
  result["prefixed_zero_cost"] = edge_list(r.prefixed);

  Report audit = Report::array();
  for (const IterationAudit& a : r.audit) {
    Report it;
    it["k"] = a.k;
    it["pinned"] = a.chosen ? Report(*a.chosen) : Report(nullptr);
    it["lp_cost"] = a.lp_cost;
    it["lp_dual"] = a.lp_dual;
    it["mw_step"] = a.zeta_mw;
    it["candidates"] = a.candidates;
    it["rounded"] = edge_list(a.rounded);
    it["dropped"] = edge_list(a.dropped);
    Report x = Report::array();
    for (const Edge& e : graph->edges()) x.push_back(a.x.size() ? a.x[e.id] : 0.0);
    it["x"] = x;
    it["stats"] = stats_section(a.stats);
    audit.push_back(it);
  }

  Report stats = stats_section(r.stats);
  stats["separation_gh_builds"] = r.separation_gh_builds;
  stats["gh_builds_per_oracle_call"] =
      r.stats.oracle_calls > 0 ? static_cast<double>(r.stats.gh_builds) / static_cast<double>(r.stats.oracle_calls)
                               : 0.0;
  Report out;
  out["result"] = result;
  out["stats"] = stats;
  out["audit"] = audit;
  return out;
}

inline Report run_lp_only(const RunConfig& c, const Instance& inst) {
  auto graph = inst.graph();
  const Graph& g = *graph;
  auto f = std::make_shared<const PairwiseFunction>(inst.requirement_matrix());
  const Requirement f_max = f->max_value();
  if (!verify_integral(g, *f, EdgeWeights<std::int64_t>(g, f_max))) {
    throw InputError("instance is infeasible: a cut with positive requirement has no edges");
  }
  EdgeWeights<std::int64_t> z(g, 0);
  std::vector<bool> fixed(g.edge_id_bound(), false);
  std::vector<EdgeId> prefixed;
  if (f_max > 0) {
    for (const Edge& e : g.edges())
      if (e.cost == 0.0) {
        z[e.id] = f_max;
        fixed[e.id] = true;
        prefixed.push_back(e.id);
      }
  }
  const double target = c.lp_tolerance.value_or(c.epsilon);
  Report result;
  Report x = Report::array();
  if (!find_violated_set(g, *f, z)) {
    result["primal"] = 0.0;
    result["dual"] = 0.0;
    result["certified_ratio"] = 1.0;
    for (const Edge& e : g.edges()) x.push_back(z[e.id] > 0 ? static_cast<double>(z[e.id]) : 0.0);
    result["x"] = x;
    result["prefixed_zero_cost"] = edge_list(prefixed);
    Report out;
    out["result"] = result;
    out["stats"] = stats_section(LpStats{});
    return out;
  }
  const double rhs_cap = std::max(g.num_edges() / 2.0, static_cast<double>(f_max));
  ResidualInstance res(graph, f, fixed, z, std::nullopt, rhs_cap);
  LpSolveOptions lo;
  lo.oracle.exact_certify = c.rational;
  const LpSolution sol = solve_residual_lp(res, target, lo);
  result["primal"] = sol.cost;
  result["dual"] = sol.dual_bound;
  result["certified_ratio"] = sol.certified_ratio();
  result["lp_tolerance"] = target;
  result["mw_step"] = sol.zeta_mw;
  for (const Edge& e : g.edges()) x.push_back(fixed[e.id] ? static_cast<double>(z[e.id]) : sol.x[e.id]);
  result["x"] = x;
  result["prefixed_zero_cost"] = edge_list(prefixed);
  Report out;
  out["result"] = result;
  out["stats"] = stats_section(sol.stats);
  return out;
}

inline Report run_oracle_check(const RunConfig& c) {
  OracleCheckOptions o;
  o.max_vertices = c.max_vertices;
  o.trials = c.trials;
  o.seed = c.seed;
  o.epsilon = c.epsilon;
  Report props = Report::array();
  bool all = true;
  for (const PropertyResult& p : oracle_check(o)) {
    Report item;
    item["property"] = p.name;
    item["checked"] = p.checked;
    item["failed"] = p.failed;
    item["status"] = p.passed() ? "pass" : "fail";
    if (!p.passed()) item["first_failure"] = p.first_failure;
    props.push_back(item);
    all = all && p.passed();
  }
  Report out;
  out["result"] = Report{{"all_passed", all}};
  out["properties"] = props;
  return out;
}

}  // namespace detail

// Runs one mode and returns the report. Everything outside the timing section
// depends only on (config, instance).
inline Report run(const RunConfig& config, const Instance* instance) {
  const auto started = std::chrono::steady_clock::now();
  detail::check_config(config);
  Report out;
  out["mode"] = mode_name(config.mode);
  if (config.mode != Mode::oracle_check) {
    if (!instance) throw InputError(std::string(mode_name(config.mode)) + " needs an instance");
    out["instance"] = detail::instance_section(*instance);
  }
  out["config"] = detail::config_section(config);
  Report body;
  switch (config.mode) {
    case Mode::solve: body = detail::run_solve(config, *instance); break;
    case Mode::lp_only: body = detail::run_lp_only(config, *instance); break;
    case Mode::oracle_check: body = detail::run_oracle_check(config); break;
  }
  for (auto& [key, value] : body.items()) out[key] = value;
  out[kVolatileSection] = Report{
      {"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count()},
      {"jobs", config.jobs}};
  return out;
}

// Report with the volatile section removed, for byte comparisons.
inline std::string stable_dump(Report report) {
  report.erase(kVolatileSection);
  return report.dump(2);
}

}  // namespace sndp
