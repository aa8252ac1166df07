#pragma once

#include <queue>
#include <vector>

#include "sndp/numeric.hpp"

namespace sndp::detail {

// Edmonds-Karp over an undirected network. Works for any ordered field and
// for int64; with exact types the returned cut is exact.
template <class T>
class FlowNetwork {
 public:
  explicit FlowNetwork(int n) : head_(n, -1) {}

  void add_undirected(int u, int v, const T& capacity) {
    if (!(capacity > T(0))) return;
    arcs_.push_back(Arc{v, head_[u], capacity});
    head_[u] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back(Arc{u, head_[v], capacity});
    head_[v] = static_cast<int>(arcs_.size()) - 1;
    if constexpr (is_inexact_v<T>) total_ += capacity;
  }

  T max_flow(int s, int t) {
    if constexpr (is_inexact_v<T>) eps_ = total_ * T(1e-14);
    T flow(0);
    const int n = static_cast<int>(head_.size());
    std::vector<int> via(n);
    while (true) {
      std::fill(via.begin(), via.end(), -1);
      std::queue<int> bfs;
      bfs.push(s);
      via[s] = -2;
      while (!bfs.empty() && via[t] == -1) {
        const int u = bfs.front();
        bfs.pop();
        for (int a = head_[u]; a != -1; a = arcs_[a].next) {
          const int v = arcs_[a].to;
          if (via[v] == -1 && usable(arcs_[a].residual)) {
            via[v] = a;
            bfs.push(v);
          }
        }
      }
      if (via[t] == -1) break;
      T bottleneck = arcs_[via[t]].residual;
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to)
        if (arcs_[via[v]].residual < bottleneck) bottleneck = arcs_[via[v]].residual;
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].residual -= bottleneck;
        arcs_[via[v] ^ 1].residual += bottleneck;
      }
      flow += bottleneck;
    }
    return flow;
  }

  // Vertices reachable from s in the residual network after max_flow.
  std::vector<bool> source_side(int s) const {
    std::vector<bool> seen(head_.size(), false);
    std::vector<int> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int a = head_[u]; a != -1; a = arcs_[a].next) {
        const int v = arcs_[a].to;
        if (!seen[v] && usable(arcs_[a].residual)) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    int next;
    T residual;
  };

  bool usable(const T& residual) const {
    if constexpr (is_inexact_v<T>) {
      return residual > eps_;
    } else {
      return residual > T(0);
    }
  }

  std::vector<int> head_;
  std::vector<Arc> arcs_;
  T total_ = T(0);
  T eps_ = T(0);
};

}  // namespace sndp::detail
