#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sndp/covering_mw.hpp"
#include "sndp/error.hpp"
#include "sndp/ghtree.hpp"
#include "sndp/graph.hpp"
#include "sndp/numeric.hpp"
#include "sndp/requirements.hpp"
#include "sndp/separation.hpp"

namespace sndp {

// The residual covering LP of one Jain iteration:
//   min c.x  s.t.  x(delta(S)) >= f(S) - z(delta(S)) for all S,
//                  x(e) = 0 for e in I,  and optionally x(g) >= 1/2.
// Columns are the edges outside I, in edge id order.
class ResidualInstance {
 public:
  ResidualInstance(std::shared_ptr<const Graph> graph, std::shared_ptr<const ProperFunction> f,
                   std::vector<bool> fixed, EdgeWeights<std::int64_t> z,
                   std::optional<EdgeId> pinned = std::nullopt,
                   std::optional<double> rhs_cap = std::nullopt)
      : graph_(std::move(graph)),
        f_(std::move(f)),
        fixed_(std::move(fixed)),
        z_(std::move(z)),
        pinned_(pinned) {
    if (!graph_ || !f_) throw InputError("residual instance needs a graph and a requirement function");
    if (f_->ground_size() != graph_->num_vertices()) {
      throw InputError("requirement function and graph disagree on the vertex set");
    }
    const auto bound = static_cast<std::size_t>(graph_->edge_id_bound());
    if (fixed_.size() < bound) fixed_.resize(bound, false);
    check_weights(*graph_, z_);
    column_of_.assign(bound, -1);
    for (const Edge& e : graph_->edges()) {
      if (fixed_[e.id]) continue;
      column_of_[e.id] = static_cast<int>(columns_.size());
      columns_.push_back(e.id);
    }
    for (const Edge& e : graph_->edges())
      if (z_[e.id] != 0) zero_offsets_ = false;
    if (pinned_) {
      if (!graph_->has_edge(*pinned_)) throw InputError("pinned edge is not in the graph");
      if (fixed_[*pinned_]) throw InputError("pinned edge must not be fixed");
    }
    rhs_cap_ = rhs_cap.value_or(graph_->num_edges() / 2.0);
    if (!(rhs_cap_ > 0.0)) throw InputError("rhs cap must be positive");
  }

  const Graph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const noexcept { return graph_; }
  const ProperFunction& f() const noexcept { return *f_; }
  const std::shared_ptr<const ProperFunction>& f_ptr() const noexcept { return f_; }
  const EdgeWeights<std::int64_t>& z() const noexcept { return z_; }
  const std::vector<bool>& fixed() const noexcept { return fixed_; }
  bool is_fixed(EdgeId e) const { return fixed_[e]; }
  std::optional<EdgeId> pinned() const noexcept { return pinned_; }
  // Upper bound on f(S) - z(delta(S)) used by the gamma lower bound.
  double rhs_cap() const noexcept { return rhs_cap_; }
  bool zero_offsets() const noexcept { return zero_offsets_; }

  const std::vector<EdgeId>& columns() const noexcept { return columns_; }
  int num_columns() const noexcept { return static_cast<int>(columns_.size()); }
  int column_of(EdgeId e) const { return column_of_[e]; }

  ResidualInstance with_pin(std::optional<EdgeId> g) const {
    return ResidualInstance(graph_, f_, fixed_, z_, g, rhs_cap_);
  }

  // Column values spread onto edge ids; fixed edges get 0.
  template <class T = double>
  EdgeWeights<T> edge_weights(std::span<const T> x) const {
    if (x.size() != columns_.size()) throw InputError("column vector has the wrong length");
    EdgeWeights<T> w(*graph_, T(0));
    for (std::size_t j = 0; j < columns_.size(); ++j) w[columns_[j]] = x[j];
    return w;
  }

  // f(S) - z(delta(S)).
  Requirement rhs(const Cut& cut) const {
    Requirement total = (*f_)(cut);
    for (const Edge& e : graph_->edges())
      if (crosses(e, cut)) total -= z_[e.id];
    return total;
  }

 private:
  std::shared_ptr<const Graph> graph_;
  std::shared_ptr<const ProperFunction> f_;
  std::vector<bool> fixed_;
  EdgeWeights<std::int64_t> z_;
  std::optional<EdgeId> pinned_;
  double rhs_cap_ = 1.0;
  bool zero_offsets_ = true;
  std::vector<EdgeId> columns_;
  std::vector<int> column_of_;
};

// A row of the residual LP: a cut constraint or the x(g) >= 1/2 row.
struct SndpRow {
  enum class Kind { cut, lower_bound };
  Kind kind = Kind::cut;
  Cut cut;
  EdgeId edge = -1;

  static SndpRow of_cut(Cut c) { return SndpRow{Kind::cut, std::move(c), -1}; }
  static SndpRow of_edge(EdgeId g) { return SndpRow{Kind::lower_bound, Cut{}, g}; }

  friend bool operator==(const SndpRow& a, const SndpRow& b) {
    return a.kind == b.kind && a.cut == b.cut && a.edge == b.edge;
  }
  friend bool operator<(const SndpRow& a, const SndpRow& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.cut < b.cut;
  }
};

inline SparseRow sparse_row(const ResidualInstance& res, const SndpRow& row) {
  SparseRow out;
  if (row.kind == SndpRow::Kind::lower_bound) {
    const int j = res.column_of(row.edge);
    if (j < 0) throw InvariantError("pinned-column", "lower-bound row on a fixed edge");
    out.coeffs.emplace_back(j, 1.0);
    out.rhs = 0.5;
    return out;
  }
  const Requirement rhs = res.rhs(row.cut);
  if (rhs < 1) throw InvariantError("positive-rhs", "cut row with f(S) - z(delta(S)) <= 0");
  for (const Edge& e : res.graph().edges()) {
    if (!crosses(e, row.cut)) continue;
    const int j = res.column_of(e.id);
    if (j >= 0) out.coeffs.emplace_back(j, 1.0);
  }
  std::sort(out.coeffs.begin(), out.coeffs.end());
  out.rhs = static_cast<double>(rhs);
  return out;
}

// Exact length of a cut row under edge weights x (fixed edges carry 0).
template <class T>
T cut_row_length(const ResidualInstance& res, const EdgeWeights<T>& x, const Cut& cut) {
  const Requirement rhs = res.rhs(cut);
  if (rhs < 1) throw InvariantError("positive-rhs", "cut row with f(S) - z(delta(S)) <= 0");
  return cut_value(res.graph(), x, cut) / T(rhs);
}

template <class T>
T row_length(const ResidualInstance& res, const EdgeWeights<T>& x, const SndpRow& row) {
  if (row.kind == SndpRow::Kind::lower_bound) return x[row.edge] * T(2);
  return cut_row_length(res, x, row.cut);
}

struct GammaBracket {
  double gamma_min = 0.0;
  double gamma_max = 0.0;
  int p = 0;
  Cut u_p;
  // Contracted edges e_0, e_1, ... in order.
  std::vector<EdgeId> contracted;
};

// Contracts the max-x edge of successive violated sets until no violated set
// remains, then brackets the shortest cut-row length.
inline std::optional<GammaBracket> gamma_bounds(const ResidualInstance& res,
                                                const EdgeWeights<double>& x,
                                                long* gh_builds = nullptr) {
  const Graph& g0 = res.graph();
  check_weights(g0, x);
  Graph current = g0;
  std::shared_ptr<const ProperFunction> f = res.f_ptr();
  std::vector<VertexId> to_current(g0.num_vertices());
  for (VertexId v = 0; v < g0.num_vertices(); ++v) to_current[v] = v;

  GammaBracket bracket;
  std::optional<double> best;
  while (true) {
    std::optional<Cut> s = find_violated_set(current, *f, res.z(), gh_builds);
    if (!s) break;
    std::optional<EdgeId> heaviest;
    for (const Edge& e : current.edges()) {
      if (!crosses(e, *s)) continue;
      if (!heaviest || x[e.id] > x[*heaviest]) heaviest = e.id;
    }
    if (!heaviest || !(x[*heaviest] > 0.0)) {
      throw InvariantError("violated-cut-has-positive-column",
                           "a violated set is crossed only by fixed or zero-valued edges");
    }
    if (!best || x[*heaviest] < *best) {
      best = x[*heaviest];
      bracket.p = static_cast<int>(bracket.contracted.size());
      bracket.u_p = preimage(*s, to_current);
    }
    bracket.contracted.push_back(*heaviest);
    Contraction c = contract_edge(current, *heaviest);
    for (VertexId& v : to_current) v = c.vertex_map[v];
    f = ContractedFunction::wrap(f, c.vertex_map);
    current = std::move(c.graph);
  }
  if (!best) return std::nullopt;
  bracket.gamma_min = *best / res.rhs_cap();
  bracket.gamma_max = cut_value(g0, x, bracket.u_p);
  return bracket;
}

// A cut whose row length is below gamma, or none. Decided by the minimum
// ratio of x/gamma + z against f over the Gomory-Hu tree.
inline std::optional<Cut> threshold_test(const ResidualInstance& res, const EdgeWeights<double>& x,
                                         double gamma, long* gh_builds = nullptr) {
  if (!(gamma > 0.0)) throw InputError("gamma must be positive");
  const Graph& g = res.graph();
  check_weights(g, x);
  if (g.num_vertices() < 2) return std::nullopt;
  EdgeWeights<double> w(g, 0.0);
  for (const Edge& e : g.edges()) w[e.id] = x[e.id] / gamma + static_cast<double>(res.z()[e.id]);
  if (gh_builds) ++*gh_builds;
  auto best = min_ratio_cut(g, w, res.f());
  if (!best || !(best->value < static_cast<double>(best->requirement))) return std::nullopt;
  if (res.rhs(best->cut) < 1) return std::nullopt;
  return best->cut;
}

struct RowAnswer {
  SndpRow row;
  double length = 0.0;
};

namespace detail {

// Geometric bisection on [lo, length of best]: lo is a lower bound on every
// cut row, best a known cut row. Stops once the returned row is within
// (1+zeta) of min(lo, pin_length).
inline RowAnswer bisect_cut_rows(const ResidualInstance& res, const EdgeWeights<double>& x,
                                 double zeta, double lo, RowAnswer best,
                                 std::optional<double> pin_length, long* gh_builds,
                                 double* final_lo, std::optional<double> first_probe = std::nullopt) {
  auto done = [&] {
    const double reach = pin_length ? std::min(best.length, *pin_length) : best.length;
    const double floor = pin_length ? std::min(lo, *pin_length) : lo;
    return reach <= (1.0 + zeta) * floor;
  };
  bool probed = false;
  for (int step = 0; !done(); ++step) {
    if (step > 4000) throw InvariantError("bisection-progress", "geometric search did not converge");
    double mid = std::sqrt(lo * best.length);
    if (!probed && first_probe && *first_probe > lo && *first_probe < best.length) mid = *first_probe;
    probed = true;
    if (!(mid > lo && mid < best.length)) break;
    if (auto w = threshold_test(res, x, mid, gh_builds)) {
      const double len = cut_row_length(res, x, *w);
      if (len < best.length) {
        best = RowAnswer{SndpRow::of_cut(*w), len};
        continue;
      }
    }
    // No witness, or rounding put the witness at or above mid.
    lo = mid;
  }
  if (final_lo) *final_lo = lo;
  return best;
}

inline RowAnswer pick_with_pin(const ResidualInstance& res, const EdgeWeights<double>& x,
                               std::optional<RowAnswer> cut_row) {
  if (auto g = res.pinned()) {
    const double pin = 2.0 * x[*g];
    if (!cut_row || pin < cut_row->length) return RowAnswer{SndpRow::of_edge(*g), pin};
  }
  if (!cut_row) {
    throw InvariantError("nonempty-rows", "residual instance has no rows");
  }
  return *cut_row;
}

}  // namespace detail

// A row whose exact length is within (1+zeta) of the shortest row of the
// residual LP, including the pinned row. Without offsets the minimum ratio
// cut on x is exact; otherwise the gamma bracket is narrowed by geometric
// bisection.
inline RowAnswer shortest_row(const ResidualInstance& res, const EdgeWeights<double>& x, double zeta,
                              long* gh_builds = nullptr) {
  if (!(zeta > 0.0)) throw InputError("zeta must be positive");
  const Graph& g = res.graph();
  check_weights(g, x);
  std::optional<RowAnswer> cut_row;
  if (res.zero_offsets()) {
    if (g.num_vertices() >= 2) {
      if (gh_builds) ++*gh_builds;
      if (auto best = min_ratio_cut(g, x, res.f())) {
        cut_row = RowAnswer{SndpRow::of_cut(best->cut), cut_row_length(res, x, best->cut)};
      }
    }
    return detail::pick_with_pin(res, x, cut_row);
  }
  if (auto bracket = gamma_bounds(res, x, gh_builds)) {
    RowAnswer start{SndpRow::of_cut(bracket->u_p), cut_row_length(res, x, bracket->u_p)};
    std::optional<double> pin;
    if (res.pinned()) pin = 2.0 * x[*res.pinned()];
    cut_row = detail::bisect_cut_rows(res, x, zeta, bracket->gamma_min, start, pin, gh_builds, nullptr);
  }
  return detail::pick_with_pin(res, x, cut_row);
}

// A row of the residual LP violated by x, with its length, or none. Exact
// for exact T: minimum ratio of x + z against f, then the pinned row.
template <class T>
std::optional<RowAnswer> certify_feasibility(const ResidualInstance& res, const EdgeWeights<T>& x,
                                             long* gh_builds = nullptr) {
  const Graph& g = res.graph();
  check_weights(g, x);
  if (g.num_vertices() >= 2) {
    EdgeWeights<T> w(g, T(0));
    for (const Edge& e : g.edges()) {
      if (!res.is_fixed(e.id)) w[e.id] = x[e.id];
      w[e.id] += T(res.z()[e.id]);
    }
    if (gh_builds) ++*gh_builds;
    auto best = min_ratio_cut(g, w, res.f());
    if (best && best->value < T(best->requirement)) {
      EdgeWeights<T> cols(g, T(0));
      for (EdgeId e : res.columns()) cols[e] = x[e];
      return RowAnswer{SndpRow::of_cut(best->cut), to_double(cut_row_length(res, cols, best->cut))};
    }
  }
  if (auto p = res.pinned()) {
    if (x[*p] * T(2) < T(1)) return RowAnswer{SndpRow::of_edge(*p), to_double(x[*p] * T(2))};
  }
  return std::nullopt;
}

struct OracleStats {
  long calls = 0;
  long gh_builds = 0;
  long fresh_searches = 0;
  long pool_hits = 0;
};

struct CutRowOracleOptions {
  // Reuse remembered rows and lower bounds between calls.
  bool warm = true;
  // Certify with exact rational Gomory-Hu trees.
  bool exact_certify = false;
};

// Adapter exposing a residual instance to mw_solve.
//
// Warm mode remembers every cut row it has returned, and a lower bound on the
// shortest cut-row length. The bound stays valid across calls because MW only
// increases x. A remembered row is returned without a Gomory-Hu build when it
// is already within (1+zeta) of the bound.
class CutRowOracle {
 public:
  using RowKey = SndpRow;

  explicit CutRowOracle(const ResidualInstance& res, CutRowOracleOptions options = {})
      : res_(res), options_(options) {
    if (res_.num_columns() == 0) throw InputError("residual instance has no free columns");
    for (EdgeId e : res_.columns()) {
      if (!(res_.graph().edge(e).cost > 0.0)) throw InputError("free columns need positive cost");
    }
  }

  int num_columns() const { return res_.num_columns(); }
  double column_cost(int j) const { return res_.graph().edge(res_.columns()[j]).cost; }
  const ResidualInstance& instance() const noexcept { return res_; }
  const OracleStats& stats() const noexcept { return stats_; }

  OracleRow<SndpRow> approx_shortest_row(std::span<const double> x, double zeta) {
    ++stats_.calls;
    const double scale = *std::max_element(x.begin(), x.end());
    if (!(scale > 0.0)) throw InvariantError("positive-columns", "oracle queried with x = 0");
    std::vector<double> normalized(x.begin(), x.end());
    for (double& v : normalized) v /= scale;
    const EdgeWeights<double> w = res_.edge_weights<double>(normalized);

    std::optional<double> pin;
    if (res_.pinned()) pin = 2.0 * w[*res_.pinned()];

    RowAnswer answer;
    bool have_answer = false;
    if (options_.warm && lower_ && !pool_.empty()) {
      const double lo = *lower_ / scale;
      std::size_t best = 0;
      double best_len = 0.0;
      for (std::size_t i = 0; i < pool_.size(); ++i) {
        const double len = row_length(pool_[i].row, normalized);
        if (i == 0 || len < best_len) {
          best = i;
          best_len = len;
        }
      }
      const double reach = pin ? std::min(best_len, *pin) : best_len;
      const double floor = pin ? std::min(lo, *pin) : lo;
      if (reach <= (1.0 + zeta) * floor) {
        ++stats_.pool_hits;
        answer = detail::pick_with_pin(res_, w, RowAnswer{pool_[best].key, best_len});
        have_answer = true;
      } else if (!res_.zero_offsets()) {
        ++stats_.fresh_searches;
        double final_lo = lo;
        RowAnswer cut = detail::bisect_cut_rows(res_, w, zeta, lo, RowAnswer{pool_[best].key, best_len},
                                                pin, &stats_.gh_builds, &final_lo,
                                                best_len / (1.0 + zeta));
        lower_ = std::max(*lower_, final_lo * scale);
        answer = detail::pick_with_pin(res_, w, cut);
        have_answer = true;
      }
    }
    if (!have_answer && no_cut_rows_) {
      answer = detail::pick_with_pin(res_, w, std::nullopt);
      have_answer = true;
    }
    if (!have_answer) {
      ++stats_.fresh_searches;
      answer = fresh(w, zeta, scale);
    }
    if (answer.row.kind == SndpRow::Kind::cut) remember(answer.row);
    return OracleRow<SndpRow>{answer.row, sparse_row(res_, answer.row), answer.length * scale};
  }

  std::optional<OracleRow<SndpRow>> find_short_row(std::span<const double> x) {
    std::optional<RowAnswer> bad;
    if (options_.exact_certify) {
      std::vector<Rational> q(x.begin(), x.end());
      bad = certify_feasibility(res_, res_.edge_weights<Rational>(q), &stats_.gh_builds);
    } else {
      bad = certify_feasibility(res_, res_.edge_weights<double>(x), &stats_.gh_builds);
    }
    if (!bad) return std::nullopt;
    SparseRow row = sparse_row(res_, bad->row);
    const double len = sndp::row_length(row, x);
    return OracleRow<SndpRow>{bad->row, std::move(row), len};
  }

  void rescale(double factor) {
    if (lower_) *lower_ *= factor;
  }

 private:
  struct PoolEntry {
    SndpRow key;
    SparseRow row;
  };

  static double row_length(const SparseRow& row, std::span<const double> x) {
    return sndp::row_length(row, x);
  }

  RowAnswer fresh(const EdgeWeights<double>& w, double zeta, double scale) {
    const Graph& g = res_.graph();
    std::optional<RowAnswer> cut_row;
    if (res_.zero_offsets()) {
      if (g.num_vertices() >= 2) {
        ++stats_.gh_builds;
        if (auto best = min_ratio_cut(g, w, res_.f())) {
          cut_row = RowAnswer{SndpRow::of_cut(best->cut), cut_row_length(res_, w, best->cut)};
          lower_ = cut_row->length * scale;
        }
      }
    } else if (auto bracket = gamma_bounds(res_, w, &stats_.gh_builds)) {
      std::optional<double> pin;
      if (res_.pinned()) pin = 2.0 * w[*res_.pinned()];
      double final_lo = bracket->gamma_min;
      cut_row = detail::bisect_cut_rows(
          res_, w, zeta, bracket->gamma_min,
          RowAnswer{SndpRow::of_cut(bracket->u_p), cut_row_length(res_, w, bracket->u_p)}, pin,
          &stats_.gh_builds, &final_lo);
      lower_ = final_lo * scale;
    }
    if (!cut_row) no_cut_rows_ = true;
    return detail::pick_with_pin(res_, w, cut_row);
  }

  void remember(const SndpRow& row) {
    for (const PoolEntry& p : pool_)
      if (p.key == row) return;
    pool_.push_back(PoolEntry{row, sparse_row(res_, row)});
  }

  const ResidualInstance& res_;
  CutRowOracleOptions options_;
  OracleStats stats_;
  std::vector<PoolEntry> pool_;
  // Lower bound on every cut-row length, in the caller's current scale.
  std::optional<double> lower_;
  // Whether any cut row exists does not depend on x.
  bool no_cut_rows_ = false;
};

}  // namespace sndp
