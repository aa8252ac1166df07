#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sndp/error.hpp"
#include "sndp/graph.hpp"
#include "sndp/numeric.hpp"
#include "sndp/requirements.hpp"
#include "sndp/row_oracle.hpp"

// Exhaustive and exact solvers. Small instances only.
namespace sndp::reference {

inline constexpr int kMaxCutVertices = 12;
inline constexpr int kMaxIpEdges = 10;

// All 2^(n-1) - 1 canonical cuts (vertex 0 outside), in mask order.
inline std::vector<Cut> canonical_cuts(int n) {
  if (n > kMaxCutVertices) {
    throw InputError("cut enumeration supports at most " + std::to_string(kMaxCutVertices) + " vertices");
  }
  std::vector<Cut> out;
  if (n < 2) return out;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t m = 1; m < count; ++m) out.push_back(Cut::from_mask(n, m << 1));
  return out;
}

inline Rational to_rational(double v) { return Rational(v); }

struct ExplicitLP {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<Rational> c;

  int rows() const { return static_cast<int>(a.size()); }
  int cols() const { return static_cast<int>(c.size()); }
};

// The residual LP with one row per canonical cut of positive right-hand
// side, then the x(g) >= 1/2 row when g is pinned. Columns follow
// res.columns(); row_keys[i] names row i.
struct EnumeratedLP {
  ExplicitLP lp;
  std::vector<SndpRow> row_keys;
};

inline EnumeratedLP enumerate_constraints(const ResidualInstance& res) {
  const Graph& g = res.graph();
  EnumeratedLP out;
  const int n = res.num_columns();
  for (EdgeId e : res.columns()) out.lp.c.push_back(to_rational(g.edge(e).cost));
  for (const Cut& cut : canonical_cuts(g.num_vertices())) {
    const Requirement rhs = res.rhs(cut);
    if (rhs < 1) continue;
    std::vector<Rational> row(n, Rational(0));
    for (const Edge& e : g.edges())
      if (crosses(e, cut) && res.column_of(e.id) >= 0) row[res.column_of(e.id)] += 1;
    out.lp.a.push_back(std::move(row));
    out.lp.b.push_back(Rational(rhs));
    out.row_keys.push_back(SndpRow::of_cut(cut));
  }
  if (auto p = res.pinned()) {
    std::vector<Rational> row(n, Rational(0));
    row[res.column_of(*p)] = 1;
    out.lp.a.push_back(std::move(row));
    out.lp.b.push_back(Rational(1, 2));
    out.row_keys.push_back(SndpRow::of_edge(*p));
  }
  return out;
}

enum class LpStatus { optimal, infeasible };

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  Rational value;
  std::vector<Rational> x;
  // Optimal dual of the covering rows.
  std::vector<Rational> y;
};

// min c.x s.t. Ax >= b, x >= 0 with c >= 0, by the dual simplex method on the
// slack basis (dual feasible from the start) with Bland's rule.
inline LpSolution exact_lp_min(const ExplicitLP& lp) {
  const int m = lp.rows();
  const int n = lp.cols();
  for (const Rational& cj : lp.c)
    if (cj < 0) throw InputError("exact_lp_min needs nonnegative costs");
  for (const auto& row : lp.a)
    if (static_cast<int>(row.size()) != n) throw InputError("ragged constraint matrix");
  if (static_cast<int>(lp.b.size()) != m) throw InputError("b has the wrong length");

  const int width = n + m;
  // Row i encodes -A_i x + s_i = -b_i; basic[i] is its basic variable.
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width + 1, Rational(0)));
  std::vector<int> basic(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = -lp.a[i][j];
    t[i][n + i] = 1;
    t[i][width] = -lp.b[i];
    basic[i] = n + i;
  }
  std::vector<Rational> d(width, Rational(0));
  for (int j = 0; j < n; ++j) d[j] = lp.c[j];

  LpSolution out;
  while (true) {
    int r = -1;
    for (int i = 0; i < m; ++i)
      if (t[i][width] < 0 && (r < 0 || basic[i] < basic[r])) r = i;
    if (r < 0) break;
    int q = -1;
    Rational best;
    for (int j = 0; j < width; ++j) {
      if (!(t[r][j] < 0)) continue;
      Rational ratio = d[j] / -t[r][j];
      if (q < 0 || ratio < best) {
        q = j;
        best = ratio;
      }
    }
    if (q < 0) {
      out.status = LpStatus::infeasible;
      return out;
    }
    const Rational pivot = t[r][q];
    for (Rational& v : t[r]) v /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == r || t[i][q] == 0) continue;
      const Rational factor = t[i][q];
      for (int j = 0; j <= width; ++j) t[i][j] -= factor * t[r][j];
    }
    if (d[q] != 0) {
      const Rational factor = d[q];
      for (int j = 0; j < width; ++j) d[j] -= factor * t[r][j];
    }
    basic[r] = q;
  }
  out.x.assign(n, Rational(0));
  for (int i = 0; i < m; ++i)
    if (basic[i] < n) out.x[basic[i]] = t[i][width];
  out.y.assign(m, Rational(0));
  for (int i = 0; i < m; ++i) out.y[i] = d[n + i];
  out.value = 0;
  for (int j = 0; j < n; ++j) out.value += lp.c[j] * out.x[j];
  return out;
}

// Optimum by enumerating every basic point: each choice of n tight
// constraints among the rows and x >= 0. Exponential; n <= 3 in practice.
inline std::optional<Rational> vertex_enumeration_min(const ExplicitLP& lp) {
  const int m = lp.rows();
  const int n = lp.cols();
  if (n > 4) throw InputError("vertex enumeration supports at most 4 columns");
  // Constraint k < m is row k, k >= m is x_{k-m} >= 0.
  const int total = m + n;
  auto coeff = [&](int k, int j) { return k < m ? lp.a[k][j] : Rational(k - m == j ? 1 : 0); };
  auto rhs = [&](int k) { return k < m ? lp.b[k] : Rational(0); };

  std::optional<Rational> best;
  std::vector<int> pick;
  std::function<void(int)> choose = [&](int from) {
    if (static_cast<int>(pick.size()) == n) {
      std::vector<std::vector<Rational>> sys(n, std::vector<Rational>(n + 1));
      for (int r = 0; r < n; ++r) {
        for (int j = 0; j < n; ++j) sys[r][j] = coeff(pick[r], j);
        sys[r][n] = rhs(pick[r]);
      }
      for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
          if (sys[r][col] != 0) {
            piv = r;
            break;
          }
        if (piv < 0) return;
        std::swap(sys[piv], sys[col]);
        for (int r = 0; r < n; ++r) {
          if (r == col || sys[r][col] == 0) continue;
          const Rational f = sys[r][col] / sys[col][col];
          for (int j = col; j <= n; ++j) sys[r][j] -= f * sys[col][j];
        }
      }
      std::vector<Rational> x(n);
      for (int j = 0; j < n; ++j) x[j] = sys[j][n] / sys[j][j];
      for (int k = 0; k < total; ++k) {
        Rational lhs = 0;
        for (int j = 0; j < n; ++j) lhs += coeff(k, j) * x[j];
        if (lhs < rhs(k)) return;
      }
      Rational value = 0;
      for (int j = 0; j < n; ++j) value += lp.c[j] * x[j];
      if (!best || value < *best) best = value;
      return;
    }
    for (int k = from; k < total; ++k) {
      pick.push_back(k);
      choose(k + 1);
      pick.pop_back();
    }
  };
  choose(0);
  return best;
}

// Some S with f(S) - z(delta(S)) >= 1, by full scan.
inline std::optional<Cut> brute_violated_set(const Graph& g, const ProperFunction& f,
                                             const EdgeWeights<std::int64_t>& z) {
  for (const Cut& cut : canonical_cuts(g.num_vertices()))
    if (f(cut) - cut_value(g, z, cut) >= 1) return cut;
  return std::nullopt;
}

inline bool brute_feasible(const Graph& g, const ProperFunction& f, const EdgeWeights<std::int64_t>& z) {
  return !brute_violated_set(g, f, z);
}

template <class T>
struct CutMinimum {
  Cut cut;
  T value;
};

// min over cuts separating s and t of w(delta(S)).
template <class T>
T brute_min_cut(const Graph& g, const EdgeWeights<T>& w, VertexId s, VertexId t) {
  std::optional<T> best;
  for (const Cut& cut : canonical_cuts(g.num_vertices())) {
    if (cut.contains(s) == cut.contains(t)) continue;
    T v = cut_value(g, w, cut);
    if (!best || v < *best) best = v;
  }
  if (!best) throw InputError("brute_min_cut needs distinct terminals");
  return *best;
}

// min over cuts with f(S) >= 1 of w(delta(S)) / f(S).
template <class T>
std::optional<CutMinimum<T>> brute_min_ratio(const Graph& g, const EdgeWeights<T>& w,
                                             const ProperFunction& f) {
  std::optional<CutMinimum<T>> best;
  for (const Cut& cut : canonical_cuts(g.num_vertices())) {
    const Requirement req = f(cut);
    if (req < 1) continue;
    T ratio = cut_value(g, w, cut) / T(req);
    if (!best || ratio < best->value) best = CutMinimum<T>{cut, ratio};
  }
  return best;
}

// Shortest cut row of a residual LP by full scan; x is indexed by edge id.
template <class T>
std::optional<CutMinimum<T>> brute_shortest_cut_row(const ResidualInstance& res, const EdgeWeights<T>& x) {
  std::optional<CutMinimum<T>> best;
  EdgeWeights<T> cols(res.graph(), T(0));
  for (EdgeId e : res.columns()) cols[e] = x[e];
  for (const Cut& cut : canonical_cuts(res.graph().num_vertices())) {
    const Requirement rhs = res.rhs(cut);
    if (rhs < 1) continue;
    T len = cut_value(res.graph(), cols, cut) / T(rhs);
    if (!best || len < best->value) best = CutMinimum<T>{cut, len};
  }
  return best;
}

// Shortest row including the pinned row, by full scan.
template <class T>
std::optional<T> brute_shortest_row(const ResidualInstance& res, const EdgeWeights<T>& x) {
  std::optional<T> best;
  if (auto c = brute_shortest_cut_row(res, x)) best = c->value;
  if (auto p = res.pinned()) {
    T pin = x[*p] * T(2);
    if (!best || pin < *best) best = pin;
  }
  return best;
}

// max over cuts of f(S) - z(delta(S)), and 0 when every value is negative.
inline Requirement brute_max_rhs(const Graph& g, const ProperFunction& f, const EdgeWeights<std::int64_t>& z) {
  Requirement best = 0;
  for (const Cut& cut : canonical_cuts(g.num_vertices()))
    best = std::max(best, f(cut) - cut_value(g, z, cut));
  return best;
}

// x(delta(S)) + z(delta(S)) >= f(S) for every S, and x(g) >= 1/2 if pinned.
inline bool brute_lp_feasible(const ResidualInstance& res, const EdgeWeights<Rational>& x) {
  EdgeWeights<Rational> w(res.graph(), Rational(0));
  for (const Edge& e : res.graph().edges()) {
    w[e.id] = Rational(res.z()[e.id]);
    if (!res.is_fixed(e.id)) w[e.id] += x[e.id];
  }
  for (const Cut& cut : canonical_cuts(res.graph().num_vertices()))
    if (cut_value(res.graph(), w, cut) < Rational(res.f()(cut))) return false;
  if (auto p = res.pinned())
    if (x[*p] * 2 < 1) return false;
  return true;
}

struct IpSolution {
  double value = 0.0;
  EdgeWeights<std::int64_t> z;
};

// Minimum-cost integral z with z(delta(S)) >= f(S) for all S and
// 0 <= z(e) <= bound, by depth-first branch and bound.
inline IpSolution exact_ip_min(const Graph& g, const ProperFunction& f, std::int64_t bound) {
  if (g.num_edges() > kMaxIpEdges) {
    throw InputError("integer enumeration supports at most " + std::to_string(kMaxIpEdges) + " edges");
  }
  if (bound < 0) throw InputError("multiplicity bound must be nonnegative");
  struct Row {
    std::vector<int> edges;
    Requirement need;
  };
  const auto edges = g.edges();
  const int m = static_cast<int>(edges.size());
  std::vector<Row> rows;
  for (const Cut& cut : canonical_cuts(g.num_vertices())) {
    const Requirement need = f(cut);
    if (need < 1) continue;
    Row row{{}, need};
    for (int i = 0; i < m; ++i)
      if (crosses(edges[i], cut)) row.edges.push_back(i);
    rows.push_back(std::move(row));
  }
  // crossing[i]: rows crossed by edge i.
  std::vector<std::vector<int>> crossing(m);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int i : rows[r].edges) crossing[i].push_back(static_cast<int>(r));
  std::vector<std::int64_t> have(rows.size(), 0);
  std::vector<std::int64_t> open(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) open[r] = static_cast<std::int64_t>(rows[r].edges.size());

  std::vector<std::int64_t> current(m, 0);
  std::optional<double> best;
  std::vector<std::int64_t> best_z;
  std::function<void(int, double)> dfs = [&](int i, double cost) {
    if (best && cost >= *best) return;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (have[r] + bound * open[r] < rows[r].need) return;
    if (i == m) {
      best = cost;
      best_z = current;
      return;
    }
    for (int r : crossing[i]) --open[r];
    for (std::int64_t v = 0; v <= bound; ++v) {
      current[i] = v;
      for (int r : crossing[i]) have[r] += v;
      dfs(i + 1, cost + edges[i].cost * static_cast<double>(v));
      for (int r : crossing[i]) have[r] -= v;
    }
    current[i] = 0;
    for (int r : crossing[i]) ++open[r];
  };
  dfs(0, 0.0);
  if (!best) throw InputError("no integral solution within the multiplicity bound");
  IpSolution out;
  out.value = *best;
  out.z = EdgeWeights<std::int64_t>(g, 0);
  for (int i = 0; i < m; ++i) out.z[edges[i].id] = best_z[i];
  return out;
}

}  // namespace sndp::reference
