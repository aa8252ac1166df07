#pragma once

#include <optional>

#include "sndp/error.hpp"
#include "sndp/ghtree.hpp"
#include "sndp/graph.hpp"
#include "sndp/numeric.hpp"
#include "sndp/requirements.hpp"

namespace sndp {

// Some S with f(S) - z(delta(S)) >= 1, or none. The minimum-ratio tree edge
// of a Gomory-Hu tree on z decides it: z and f integral turn
// z(delta(S)) < f(S) into z(delta(S)) <= f(S) - 1.
template <class T>
std::optional<Cut> find_violated_set(const Graph& g, const ProperFunction& f,
                                     const EdgeWeights<T>& z, long* gh_builds = nullptr) {
  check_weights(g, z);
  for (const Edge& e : g.edges()) {
    if (!is_integral_value(z[e.id])) throw InputError("edge offsets must be integral");
  }
  if (g.num_vertices() < 2) return std::nullopt;
  if (gh_builds) ++*gh_builds;
  auto best = min_ratio_cut(g, z, f);
  if (best && best->value < T(best->requirement)) return best->cut;
  return std::nullopt;
}

}  // namespace sndp
