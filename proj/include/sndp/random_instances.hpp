#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "sndp/graph.hpp"
#include "sndp/reference.hpp"
#include "sndp/requirements.hpp"
#include "sndp/row_oracle.hpp"

namespace sndp::random {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// Random connected multigraph: random spanning tree, then each further pair
// with probability density, and occasional parallel copies.
inline std::shared_ptr<const Graph> random_graph(Rng& rng, int n, double density, int max_cost = 10,
                                                 double parallel = 0.1) {
  std::vector<EdgeSpec> specs;
  for (VertexId v = 1; v < n; ++v) specs.push_back({uniform(rng, 0, v - 1), v, double(uniform(rng, 1, max_cost))});
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) {
      if (coin(rng, density)) specs.push_back({u, v, double(uniform(rng, 1, max_cost))});
    }
  const std::size_t base = specs.size();
  for (std::size_t i = 0; i < base; ++i)
    if (coin(rng, parallel)) specs.push_back({specs[i].u, specs[i].v, double(uniform(rng, 1, max_cost))});
  return std::make_shared<const Graph>(n, std::span<const EdgeSpec>(specs));
}

inline RequirementMatrix random_requirements(Rng& rng, int n, int r_max, double p = 0.5) {
  RequirementMatrix r(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (r_max > 0 && coin(rng, p)) r.set(u, v, uniform(rng, 1, r_max));
  return r;
}

struct ResidualOptions {
  int min_vertices = 2;
  int max_vertices = 8;
  double density = 0.4;
  int r_max = 3;
  int z_max = 2;
  double fixed_probability = 0.2;
  bool pin = false;
  // Reject instances where some f(S) - z(delta(S)) exceeds |E|/2.
  bool require_rhs_cap = true;
  bool require_cut_rows = true;
};

// A random feasible residual LP: every cut with positive right-hand side is
// crossed by a free edge. Retries until the options are met. Brute force over
// cuts, so max_vertices is capped like the reference oracles.
inline ResidualInstance random_residual(Rng& rng, const ResidualOptions& o) {
  while (true) {
    const int n = uniform(rng, o.min_vertices, o.max_vertices);
    auto g = random_graph(rng, n, o.density);
    auto f = std::make_shared<const PairwiseFunction>(random_requirements(rng, n, o.r_max));
    EdgeWeights<std::int64_t> z(*g, 0);
    std::vector<bool> fixed(g->edge_id_bound(), false);
    for (const Edge& e : g->edges()) {
      z[e.id] = uniform(rng, 0, o.z_max);
      fixed[e.id] = coin(rng, o.fixed_probability);
    }
    std::vector<EdgeId> free;
    for (const Edge& e : g->edges())
      if (!fixed[e.id]) free.push_back(e.id);
    if (free.empty()) continue;
    std::optional<EdgeId> pin;
    if (o.pin) pin = free[uniform(rng, 0, static_cast<int>(free.size()) - 1)];
    ResidualInstance res(g, f, fixed, z, pin);
    bool ok = true;
    bool any_row = false;
    for (const Cut& cut : reference::canonical_cuts(n)) {
      const Requirement rhs = res.rhs(cut);
      if (rhs < 1) continue;
      any_row = true;
      if (o.require_rhs_cap && rhs > g->num_edges() / 2.0) ok = false;
      bool crossed = false;
      for (const Edge& e : g->edges())
        if (!fixed[e.id] && crosses(e, cut)) crossed = true;
      if (!crossed) ok = false;
    }
    if (!ok || (o.require_cut_rows && !any_row)) continue;
    return res;
  }
}

// Strictly positive column values spread over edges.
inline EdgeWeights<double> random_positive_x(Rng& rng, const ResidualInstance& res) {
  EdgeWeights<double> x(res.graph(), 0.0);
  for (EdgeId e : res.columns()) x[e] = std::uniform_real_distribution<double>(0.05, 5.0)(rng);
  return x;
}

inline EdgeWeights<Rational> exact(const EdgeWeights<double>& x) {
  std::vector<Rational> out;
  for (double v : x.values()) out.emplace_back(v);
  return EdgeWeights<Rational>(std::move(out));
}

}  // namespace sndp::random
