#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sndp/error.hpp"
#include "sndp/graph.hpp"
#include "sndp/maxflow.hpp"
#include "sndp/numeric.hpp"
#include "sndp/requirements.hpp"

namespace sndp {

template <class T>
struct MinCut {
  T value;
  // Canonical cut; source_side[s] is always true.
  Cut cut;
  std::vector<bool> source_side;
};

// Minimum w-weight cut separating s and t.
template <class T>
MinCut<T> min_cut(const Graph& g, const EdgeWeights<T>& w, VertexId s, VertexId t) {
  check_weights(g, w);
  const int n = g.num_vertices();
  if (s < 0 || s >= n || t < 0 || t >= n) throw InputError("min_cut terminal out of range");
  if (s == t) throw InputError("min_cut needs distinct terminals");
  detail::FlowNetwork<T> net(n);
  for (const Edge& e : g.edges()) net.add_undirected(e.u, e.v, w[e.id]);
  net.max_flow(s, t);
  std::vector<bool> side = net.source_side(s);
  Cut cut = Cut::from_indicator(side);
  T value = cut_value(g, w, cut);
  return MinCut<T>{std::move(value), std::move(cut), std::move(side)};
}

template <class T>
struct TreeEdge {
  VertexId u;
  VertexId v;
  T weight;
  // Component of the tree minus this edge, canonicalized.
  Cut side;
};

template <class T>
class GomoryHuTree {
 public:
  GomoryHuTree() = default;
  GomoryHuTree(int n, std::vector<TreeEdge<T>> edges) : n_(n), edges_(std::move(edges)) {}

  int num_vertices() const noexcept { return n_; }
  const std::vector<TreeEdge<T>>& edges() const noexcept { return edges_; }

  // Minimum tree weight on the u-v path.
  T path_min(VertexId u, VertexId v) const {
    if (u == v) throw InputError("path_min needs distinct vertices");
    std::vector<std::vector<std::pair<VertexId, std::size_t>>> adj(n_);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      adj[edges_[i].u].emplace_back(edges_[i].v, i);
      adj[edges_[i].v].emplace_back(edges_[i].u, i);
    }
    std::vector<int> via(n_, -1);
    std::vector<VertexId> stack{u};
    std::vector<bool> seen(n_, false);
    seen[u] = true;
    while (!stack.empty()) {
      const VertexId a = stack.back();
      stack.pop_back();
      for (const auto& [b, i] : adj[a])
        if (!seen[b]) {
          seen[b] = true;
          via[b] = static_cast<int>(i);
          stack.push_back(b);
        }
    }
    if (!seen[v]) throw InvariantError("gh-spanning", "tree does not connect the query vertices");
    std::optional<T> best;
    for (VertexId x = v; x != u;) {
      const TreeEdge<T>& e = edges_[via[x]];
      if (!best || e.weight < *best) best = e.weight;
      x = (e.u == x) ? e.v : e.u;
    }
    return *best;
  }

 private:
  int n_ = 0;
  std::vector<TreeEdge<T>> edges_;
};

// Classical Gomory-Hu construction: repeatedly split a supernode with one
// minimum cut computed on the graph where every other branch of the current
// tree is contracted to a single vertex. The fundamental cut of every final
// tree edge is then a minimum cut for its endpoints.
template <class T>
GomoryHuTree<T> gomory_hu(const Graph& g, const EdgeWeights<T>& w) {
  check_weights(g, w);
  const int n = g.num_vertices();
  if (n == 1) return GomoryHuTree<T>(1, {});

  struct Link {
    int a;
    int b;
    T weight;
  };
  std::vector<std::vector<VertexId>> groups(1);
  for (VertexId v = 0; v < n; ++v) groups[0].push_back(v);
  std::vector<int> group_of(n, 0);
  std::vector<Link> links;

  while (true) {
    int x = -1;
    for (std::size_t i = 0; i < groups.size(); ++i)
      if (groups[i].size() >= 2) {
        x = static_cast<int>(i);
        break;
      }
    if (x < 0) break;

    // Label each branch hanging off x.
    const int num_groups = static_cast<int>(groups.size());
    std::vector<std::vector<int>> incident(num_groups);
    for (std::size_t i = 0; i < links.size(); ++i) {
      incident[links[i].a].push_back(static_cast<int>(i));
      incident[links[i].b].push_back(static_cast<int>(i));
    }
    std::vector<int> branch_of(num_groups, -1);
    std::vector<int> branch_of_link(links.size(), -1);
    int num_branches = 0;
    for (int li : incident[x]) {
      const int root = links[li].a == x ? links[li].b : links[li].a;
      const int id = num_branches++;
      branch_of_link[li] = id;
      std::vector<int> stack{root};
      branch_of[root] = id;
      while (!stack.empty()) {
        const int a = stack.back();
        stack.pop_back();
        for (int lj : incident[a]) {
          const int b = links[lj].a == a ? links[lj].b : links[lj].a;
          if (b != x && branch_of[b] < 0) {
            branch_of[b] = id;
            stack.push_back(b);
          }
        }
      }
    }

    const std::vector<VertexId> members = groups[x];
    const int k = static_cast<int>(members.size());
    std::vector<int> label(n);
    for (VertexId v = 0; v < n; ++v) label[v] = k + branch_of[group_of[v]];
    for (int i = 0; i < k; ++i) label[members[i]] = i;

    detail::FlowNetwork<T> net(k + num_branches);
    for (const Edge& e : g.edges()) {
      const int a = label[e.u];
      const int b = label[e.v];
      if (a != b) net.add_undirected(a, b, w[e.id]);
    }
    T value = net.max_flow(0, 1);
    const std::vector<bool> side = net.source_side(0);

    std::vector<VertexId> keep;
    std::vector<VertexId> split;
    for (int i = 0; i < k; ++i) (side[i] ? keep : split).push_back(members[i]);
    const int y = num_groups;
    groups[x] = std::move(keep);
    for (VertexId v : split) group_of[v] = y;
    groups.push_back(std::move(split));
    for (int li : incident[x]) {
      if (!side[k + branch_of_link[li]]) {
        if (links[li].a == x) links[li].a = y;
        else links[li].b = y;
      }
    }
    links.push_back(Link{x, y, std::move(value)});
  }

  std::vector<std::vector<std::pair<VertexId, std::size_t>>> adj(n);
  std::vector<std::pair<VertexId, VertexId>> ends;
  for (const Link& l : links) {
    const VertexId a = groups[l.a].front();
    const VertexId b = groups[l.b].front();
    ends.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(ends.begin(), ends.end());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    adj[ends[i].first].emplace_back(ends[i].second, i);
    adj[ends[i].second].emplace_back(ends[i].first, i);
  }

  std::vector<TreeEdge<T>> edges;
  edges.reserve(ends.size());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    std::vector<bool> comp(n, false);
    std::vector<VertexId> stack{ends[i].first};
    comp[ends[i].first] = true;
    while (!stack.empty()) {
      const VertexId a = stack.back();
      stack.pop_back();
      for (const auto& [b, j] : adj[a])
        if (j != i && !comp[b]) {
          comp[b] = true;
          stack.push_back(b);
        }
    }
    Cut side = Cut::from_indicator(std::move(comp));
    T weight = cut_value(g, w, side);
    edges.push_back(TreeEdge<T>{ends[i].first, ends[i].second, std::move(weight), std::move(side)});
  }
  return GomoryHuTree<T>(n, std::move(edges));
}

template <class T>
struct RatioCut {
  Cut cut;
  T value;
  Requirement requirement;
  std::size_t tree_edge;

  T ratio() const { return value / T(requirement); }
};

// Among tree edges with f(S_e) >= 1, the one minimizing w(delta(S_e))/f(S_e);
// ties go to the smaller tree edge index. For proper f this is the global
// minimum over all cuts with f(S) >= 1.
template <class T>
std::optional<RatioCut<T>> min_ratio_cut(const GomoryHuTree<T>& tree, const ProperFunction& f) {
  std::optional<RatioCut<T>> best;
  const auto& edges = tree.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Requirement req = f(edges[i].side);
    if (req < 1) continue;
    if (!best || edges[i].weight * T(best->requirement) < best->value * T(req)) {
      best = RatioCut<T>{edges[i].side, edges[i].weight, req, i};
    }
  }
  return best;
}

template <class T>
std::optional<RatioCut<T>> min_ratio_cut(const Graph& g, const EdgeWeights<T>& w,
                                         const ProperFunction& f) {
  if (f.ground_size() != g.num_vertices()) {
    throw InputError("requirement function and graph disagree on the vertex set");
  }
  return min_ratio_cut(gomory_hu(g, w), f);
}

}  // namespace sndp
