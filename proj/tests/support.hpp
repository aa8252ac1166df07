#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "sndp/graph.hpp"
#include "sndp/random_instances.hpp"
#include "sndp/reference.hpp"
#include "sndp/requirements.hpp"
#include "sndp/row_oracle.hpp"

namespace sndp::testing {

using random::Rng;
using random::uniform;
using random::coin;
using random::random_graph;
using random::random_requirements;
using random::ResidualOptions;
using random::random_residual;
using random::random_positive_x;
using random::exact;

inline std::shared_ptr<const ProperFunction> pairwise(const RequirementMatrix& r) {
  return std::make_shared<const PairwiseFunction>(r);
}

template <class T>
EdgeWeights<T> random_weights(Rng& rng, const Graph& g, int lo, int hi) {
  EdgeWeights<T> w(g, T(0));
  for (const Edge& e : g.edges()) w[e.id] = T(uniform(rng, lo, hi));
  return w;
}

// Random positive rational weights p/q, q in 1..8.
template <class T>
EdgeWeights<T> random_fraction_weights(Rng& rng, const Graph& g) {
  EdgeWeights<T> w(g, T(0));
  for (const Edge& e : g.edges()) w[e.id] = T(uniform(rng, 1, 40)) / T(uniform(rng, 1, 8));
  return w;
}

// Triangle on a=0, b=1, c=2 with edges ab=0, bc=1, ac=2 and unit costs.
inline std::shared_ptr<const Graph> triangle() {
  return std::make_shared<const Graph>(3, std::initializer_list<EdgeSpec>{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
}

inline RequirementMatrix all_pairs(int n, Requirement value) {
  RequirementMatrix r(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) r.set(u, v, value);
  return r;
}

}  // namespace sndp::testing

namespace sndp::testing {

struct DenseCoveringLP {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;
};

// n, m uniform in [1, 20]; each entry nonzero with probability 1/2 and then
// an integer in [1, 10]; every row gets at least one nonzero; b, c integers
// in [1, 10].
inline DenseCoveringLP random_covering_lp(Rng& rng, int max_dim = 20) {
  const int n = uniform(rng, 1, max_dim);
  const int m = uniform(rng, 1, max_dim);
  DenseCoveringLP lp;
  lp.a.assign(m, std::vector<double>(n, 0.0));
  for (int i = 0; i < m; ++i) {
    bool any = false;
    for (int j = 0; j < n; ++j)
      if (coin(rng, 0.5)) {
        lp.a[i][j] = uniform(rng, 1, 10);
        any = true;
      }
    if (!any) lp.a[i][uniform(rng, 0, n - 1)] = uniform(rng, 1, 10);
    lp.b.push_back(uniform(rng, 1, 10));
  }
  for (int j = 0; j < n; ++j) lp.c.push_back(uniform(rng, 1, 10));
  return lp;
}

}  // namespace sndp::testing
