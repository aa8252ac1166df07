#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sndp/error.hpp"

namespace sndp {

using VertexId = int;
using EdgeId = int;

struct Edge {
  EdgeId id;
  VertexId u;
  VertexId v;
  double cost;
};

struct EdgeSpec {
  VertexId u;
  VertexId v;
  double cost = 1.0;
};

// Undirected multigraph on vertices 0..n-1. Edge ids are assigned at
// construction and survive contraction, so weight vectors indexed by edge id
// stay valid for every contracted descendant.
class Graph {
 public:
  Graph() = default;

  Graph(int num_vertices, std::span<const EdgeSpec> edges) : num_vertices_(num_vertices) {
    if (num_vertices < 1) throw InputError("graph needs at least one vertex");
    edges_.reserve(edges.size());
    for (const EdgeSpec& spec : edges) {
      const EdgeId id = static_cast<EdgeId>(edges_.size());
      check_endpoint(spec.u);
      check_endpoint(spec.v);
      if (spec.u == spec.v) {
        throw InputError("edge " + std::to_string(id) + " is a self-loop");
      }
      if (!(spec.cost >= 0.0)) {
        throw InputError("edge " + std::to_string(id) + " has negative cost");
      }
      edges_.push_back(Edge{id, spec.u, spec.v, spec.cost});
    }
    id_bound_ = static_cast<EdgeId>(edges_.size());
    rebuild_index();
  }

  Graph(int num_vertices, std::initializer_list<EdgeSpec> edges)
      : Graph(num_vertices, std::span<const EdgeSpec>(edges.begin(), edges.size())) {}

  int num_vertices() const noexcept { return num_vertices_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  // One past the largest edge id ever issued for this graph's lineage.
  EdgeId edge_id_bound() const noexcept { return id_bound_; }

  std::span<const Edge> edges() const noexcept { return edges_; }

  bool has_edge(EdgeId id) const noexcept {
    return id >= 0 && id < id_bound_ && index_[id] >= 0;
  }

  const Edge& edge(EdgeId id) const {
    if (!has_edge(id)) throw InputError("unknown edge id " + std::to_string(id));
    return edges_[index_[id]];
  }

 private:
  friend struct GraphAccess;

  void check_endpoint(VertexId v) const {
    if (v < 0 || v >= num_vertices_) {
      throw InputError("vertex " + std::to_string(v) + " out of range");
    }
  }

  void rebuild_index() {
    index_.assign(id_bound_, -1);
    for (std::size_t i = 0; i < edges_.size(); ++i) index_[edges_[i].id] = static_cast<int>(i);
  }

  int num_vertices_ = 0;
  EdgeId id_bound_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> index_;
};

struct GraphAccess {
  static Graph make(int n, EdgeId id_bound, std::vector<Edge> edges) {
    Graph g;
    g.num_vertices_ = n;
    g.id_bound_ = id_bound;
    g.edges_ = std::move(edges);
    g.rebuild_index();
    return g;
  }
};

// A proper vertex subset S, stored in canonical form: the root vertex 0 is
// never a member, so S and V\S share one representation.
class Cut {
 public:
  Cut() = default;

  static Cut from_indicator(std::vector<bool> indicator) {
    const std::size_t n = indicator.size();
    if (n < 2) throw InputError("a cut needs a ground set of at least two vertices");
    if (indicator[0]) indicator.flip();
    if (std::find(indicator.begin(), indicator.end(), true) == indicator.end()) {
      throw InputError("cut side must be a nonempty proper subset");
    }
    Cut c;
    c.side_ = std::move(indicator);
    return c;
  }

  static Cut from_members(int n, std::span<const VertexId> members) {
    if (n < 2) throw InputError("a cut needs a ground set of at least two vertices");
    std::vector<bool> ind(n, false);
    for (VertexId v : members) {
      if (v < 0 || v >= n) throw InputError("cut member " + std::to_string(v) + " out of range");
      ind[v] = true;
    }
    return from_indicator(std::move(ind));
  }

  static Cut from_members(int n, std::initializer_list<VertexId> members) {
    return from_members(n, std::span<const VertexId>(members.begin(), members.size()));
  }

  // Bit i of mask is vertex i.
  static Cut from_mask(int n, std::uint64_t mask) {
    if (n < 2 || n > 64) throw InputError("mask cuts support 2..64 vertices");
    std::vector<bool> ind(n, false);
    for (int v = 0; v < n; ++v) ind[v] = (mask >> v) & 1U;
    return from_indicator(std::move(ind));
  }

  int ground_size() const noexcept { return static_cast<int>(side_.size()); }
  bool contains(VertexId v) const { return side_[v]; }
  const std::vector<bool>& indicator() const noexcept { return side_; }

  std::vector<VertexId> members() const {
    std::vector<VertexId> out;
    for (int v = 0; v < ground_size(); ++v)
      if (side_[v]) out.push_back(v);
    return out;
  }

  friend bool operator==(const Cut& a, const Cut& b) { return a.side_ == b.side_; }
  friend bool operator<(const Cut& a, const Cut& b) { return a.side_ < b.side_; }

 private:
  std::vector<bool> side_;
};

// Values indexed by edge id. Kept apart from the graph so the same topology
// can be reweighted without copies.
template <class T>
class EdgeWeights {
 public:
  EdgeWeights() = default;
  explicit EdgeWeights(const Graph& g, T fill = T(0)) : values_(g.edge_id_bound(), fill) {}
  explicit EdgeWeights(std::vector<T> values) : values_(std::move(values)) {}

  T& operator[](EdgeId e) { return values_[e]; }
  const T& operator[](EdgeId e) const { return values_[e]; }

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<T>& values() const noexcept { return values_; }
  std::vector<T>& values() noexcept { return values_; }

  template <class U>
  EdgeWeights<U> cast() const {
    std::vector<U> out;
    out.reserve(values_.size());
    for (const T& v : values_) out.push_back(U(v));
    return EdgeWeights<U>(std::move(out));
  }

 private:
  std::vector<T> values_;
};

template <class T>
void check_weights(const Graph& g, const EdgeWeights<T>& w) {
  if (w.size() < static_cast<std::size_t>(g.edge_id_bound())) {
    throw InvariantError("edge-weights-complete", "weight vector shorter than the edge id range");
  }
  for (const Edge& e : g.edges()) {
    if (w[e.id] < T(0)) {
      throw InputError("negative weight on edge " + std::to_string(e.id));
    }
  }
}

inline void check_cut(const Graph& g, const Cut& cut) {
  if (cut.ground_size() != g.num_vertices()) {
    throw InputError("cut ground set has " + std::to_string(cut.ground_size()) +
                     " vertices, graph has " + std::to_string(g.num_vertices()));
  }
}

inline bool crosses(const Edge& e, const Cut& cut) { return cut.contains(e.u) != cut.contains(e.v); }

// delta(S): edges with exactly one endpoint in S.
inline std::vector<EdgeId> cut_edges(const Graph& g, const Cut& cut) {
  check_cut(g, cut);
  std::vector<EdgeId> out;
  for (const Edge& e : g.edges())
    if (crosses(e, cut)) out.push_back(e.id);
  return out;
}

template <class T>
T cut_value(const Graph& g, const EdgeWeights<T>& w, const Cut& cut) {
  check_cut(g, cut);
  if (w.size() < static_cast<std::size_t>(g.edge_id_bound())) {
    throw InvariantError("edge-weights-complete", "weight vector shorter than the edge id range");
  }
  T total(0);
  for (const Edge& e : g.edges())
    if (crosses(e, cut)) total += w[e.id];
  return total;
}

struct Contraction {
  Graph graph;
  VertexId merged;
  // vertex_map[v] is the image of old vertex v.
  std::vector<VertexId> vertex_map;
};

// Merges the endpoints of e. Parallel edges survive, edges that become loops
// are dropped. The smaller endpoint keeps its rank, so vertex 0 stays 0.
inline Contraction contract_edge(const Graph& g, EdgeId e) {
  const Edge& target = g.edge(e);
  const VertexId keep = std::min(target.u, target.v);
  const VertexId gone = std::max(target.u, target.v);

  std::vector<VertexId> map(g.num_vertices());
  VertexId next = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (v == gone) continue;
    map[v] = next++;
  }
  map[gone] = map[keep];

  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& old : g.edges()) {
    const VertexId a = map[old.u];
    const VertexId b = map[old.v];
    if (a == b) continue;
    edges.push_back(Edge{old.id, a, b, old.cost});
  }
  return Contraction{GraphAccess::make(g.num_vertices() - 1, g.edge_id_bound(), std::move(edges)),
                     map[keep], std::move(map)};
}

// Preimage of a cut of a contracted graph under the map original -> contracted.
inline Cut preimage(const Cut& contracted, std::span<const VertexId> map) {
  std::vector<bool> ind(map.size(), false);
  for (std::size_t v = 0; v < map.size(); ++v) ind[v] = contracted.contains(map[v]);
  return Cut::from_indicator(std::move(ind));
}

}  // namespace sndp
