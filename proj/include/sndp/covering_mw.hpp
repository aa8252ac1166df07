#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sndp/error.hpp"

namespace sndp {

// One covering constraint sum_j A(i,j) x(j) >= b(i), stored sparsely.
struct SparseRow {
  std::vector<std::pair<int, double>> coeffs;
  double rhs = 1.0;
};

// len(i,x) = sum_j A(i,j) x(j) / b(i).
inline double row_length(const SparseRow& row, std::span<const double> x) {
  if (!(row.rhs > 0.0)) throw InvariantError("positive-rhs", "oracle reported b(i) <= 0");
  double total = 0.0;
  for (const auto& [j, a] : row.coeffs) total += a * x[j];
  return total / row.rhs;
}

template <class Key>
struct OracleRow {
  Key key;
  SparseRow row;
  // Exact len(row, x) at the x the oracle was queried with.
  double length;
};

// Row access for a positive covering LP min c.x, Ax >= b, x >= 0 with
// possibly exponentially many rows.
//   approx_shortest_row(x, zeta): a row within (1+zeta) of the shortest.
//     Successive calls within one solve see componentwise nondecreasing x,
//     up to the factors announced through rescale().
//   find_short_row(x): some row with length < 1, or none when x is feasible.
//   rescale(f): the caller multiplied its x by f.
template <class O>
concept CoveringOracle = requires(O& o, const O& co, std::span<const double> x, double v) {
  typename O::RowKey;
  { co.num_columns() } -> std::convertible_to<int>;
  { co.column_cost(0) } -> std::convertible_to<double>;
  { o.approx_shortest_row(x, v) } -> std::same_as<OracleRow<typename O::RowKey>>;
  { o.find_short_row(x) } -> std::same_as<std::optional<OracleRow<typename O::RowKey>>>;
  o.rescale(v);
};

struct MwStep {
  long iteration;
  int column;
  double increment;
  const SparseRow* row;
  // Column values before and after the update, in the solver's internal scale.
  std::span<const double> x_before;
  std::span<const double> x_after;
  // Natural log of sum_j c(j) x(j) in true scale.
  double log_cost_before;
  double log_cost_after;
};

struct MwOptions {
  double zeta = 0.1;
  // Final x is inflated by this factor so floating-point certification errs
  // on the feasible side.
  double certify_margin = 1e-9;
  std::function<void(const MwStep&)> observer = nullptr;
};

template <class Key>
struct DualEntry {
  Key key;
  SparseRow row;
  double y = 0.0;
  double y_scaled = 0.0;
};

template <class Key>
struct MwResult {
  std::vector<double> x;
  double primal_cost = 0.0;
  // sum_i b(i) y(i) over the dual scaled by its largest column load.
  double dual_bound = 0.0;
  // The same dual scaled by log_{1+zeta}((1+zeta)/delta).
  double worst_case_dual_bound = 0.0;
  double max_load = 0.0;
  double load_cap = 0.0;
  std::vector<DualEntry<Key>> duals;
  long iterations = 0;
  long oracle_calls = 0;
  long certify_rounds = 0;
  double zeta = 0.0;
  // max_j c(j) x_t(j) at termination, true scale.
  double final_max_cost_share = 0.0;
};

// (1/zeta) log_{1+zeta}((1+zeta) n).
inline double mw_iteration_bound(double zeta, int n) {
  return std::log((1.0 + zeta) * n) / (zeta * std::log1p(zeta));
}

namespace detail {

template <class Key>
struct DualAccount {
  std::vector<DualEntry<Key>> entries;
  std::map<Key, std::size_t> index;

  void add(const Key& key, const SparseRow& row, double increment) {
    auto [it, inserted] = index.try_emplace(key, entries.size());
    if (inserted) entries.push_back(DualEntry<Key>{key, row, 0.0, 0.0});
    entries[it->second].y += increment;
  }
};

}  // namespace detail

// Multiplicative weights for positive covering LPs with an approximate
// shortest-row oracle. x is kept as x_hat * exp(log_scale) so that the tiny
// starting value delta/c(j) never underflows.
template <CoveringOracle O>
MwResult<typename O::RowKey> mw_solve(O& oracle, const MwOptions& options) {
  using Key = typename O::RowKey;
  const double zeta = options.zeta;
  if (!(zeta > 0.0 && zeta <= 0.15)) throw InputError("zeta must lie in (0, 0.15]");
  const int n = oracle.num_columns();
  if (n <= 0) throw InputError("covering instance has no columns");
  std::vector<double> cost(n);
  for (int j = 0; j < n; ++j) {
    cost[j] = oracle.column_cost(j);
    if (!(cost[j] > 0.0)) throw InputError("column costs must be positive");
  }

  const double log1pz = std::log1p(zeta);
  const double log_delta = log1pz - std::log((1.0 + zeta) * n) / zeta;
  const double load_cap = (log1pz - log_delta) / log1pz;
  const double hard_limit = n * std::ceil(load_cap) + 1.0;

  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = 1.0 / cost[j];
  double log_scale = log_delta;
  auto weighted = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += cost[j] * v[j];
    return s;
  };

  MwResult<Key> result;
  result.zeta = zeta;
  result.load_cap = load_cap;
  detail::DualAccount<Key> duals;

  double best_ratio = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  double best_length = 0.0;
  auto track = [&](const OracleRow<Key>& q) {
    if (!(q.length > 0.0)) throw InvariantError("positive-length", "shortest row has zero length");
    const double ratio = weighted(x) / q.length;
    if (ratio < best_ratio) {
      best_ratio = ratio;
      best_x = x;
      best_length = q.length;
    }
  };

  std::vector<double> before;
  long k = 0;
  while (std::log(weighted(x)) + log_scale < 0.0) {
    if (++k > hard_limit) {
      throw InvariantError("mw-iteration-bound",
                           "exceeded n * log_{1+zeta}((1+zeta)/delta) iterations");
    }
    OracleRow<Key> q = oracle.approx_shortest_row(x, zeta);
    ++result.oracle_calls;
    track(q);

    int p = -1;
    double p_ratio = 0.0;
    double p_coeff = 0.0;
    for (const auto& [j, a] : q.row.coeffs) {
      if (!(a > 0.0)) continue;
      const double r = cost[j] / a;
      if (p < 0 || r < p_ratio || (r == p_ratio && j < p)) {
        p = j;
        p_ratio = r;
        p_coeff = a;
      }
    }
    if (p < 0) throw InvariantError("nonzero-row", "oracle returned a row without positive coefficients");

    const double increment = cost[p] / p_coeff;
    duals.add(q.key, q.row, increment);
    if (options.observer) before = x;
    const double log_cost_before = std::log(weighted(x)) + log_scale;
    for (const auto& [j, a] : q.row.coeffs) x[j] *= 1.0 + zeta * cost[p] * a / (cost[j] * p_coeff);
    if (options.observer) {
      options.observer(MwStep{k, p, increment, &q.row, before, x, log_cost_before,
                              std::log(weighted(x)) + log_scale});
    }

    const double peak = *std::max_element(x.begin(), x.end());
    if (peak > 1e100) {
      const double factor = 1e-100;
      for (double& v : x) v = std::max(v * factor, std::numeric_limits<double>::min());
      log_scale -= std::log(factor);
      oracle.rescale(factor);
    }
  }
  result.iterations = k;
  {
    double share = 0.0;
    for (int j = 0; j < n; ++j) share = std::max(share, std::log(cost[j] * x[j]) + log_scale);
    result.final_max_cost_share = std::exp(share);
  }
  // The last iterate is a candidate too.
  track(oracle.approx_shortest_row(x, zeta));
  ++result.oracle_calls;

  // Scale the best iterate to feasibility. Each short row found raises alpha
  // to exactly what that row needs, so alpha ends at 1/len(x_best).
  double alpha = 1.0 / best_length;
  std::vector<double> scaled(n);
  for (int round = 0;; ++round) {
    if (round > 500) throw InvariantError("mw-certification", "feasibility scaling did not converge");
    for (int j = 0; j < n; ++j) scaled[j] = best_x[j] * alpha * (1.0 + options.certify_margin);
    auto short_row = oracle.find_short_row(scaled);
    ++result.certify_rounds;
    if (!short_row) break;
    if (!(short_row->length > 0.0)) {
      throw InvariantError("mw-certification", "violated row has zero length");
    }
    alpha = alpha * (1.0 + options.certify_margin) / short_row->length;
  }
  result.x = scaled;
  result.primal_cost = weighted(scaled);

  // Dual: each column's load sum_i A(i,j) y(i) / c(j) stays below load_cap.
  std::vector<double> load(n, 0.0);
  double by = 0.0;
  for (const auto& entry : duals.entries) {
    for (const auto& [j, a] : entry.row.coeffs) load[j] += a * entry.y / cost[j];
    by += entry.row.rhs * entry.y;
  }
  result.max_load = *std::max_element(load.begin(), load.end());
  if (result.max_load > load_cap * (1.0 + 1e-9) + 1e-9) {
    throw InvariantError("mw-dual-load", "a column load exceeds log_{1+zeta}((1+zeta)/delta)");
  }
  const double divisor = result.max_load * (1.0 + 1e-12);
  for (auto& entry : duals.entries) entry.y_scaled = entry.y / divisor;
  result.dual_bound = by / divisor;
  result.worst_case_dual_bound = by / load_cap;
  result.duals = std::move(duals.entries);
  return result;
}

// Dense covering LP whose shortest row is found by scanning every row.
class ExplicitCoveringOracle {
 public:
  using RowKey = int;

  ExplicitCoveringOracle(std::vector<std::vector<double>> a, std::vector<double> b,
                         std::vector<double> c)
      : b_(std::move(b)), c_(std::move(c)) {
    if (a.size() != b_.size()) throw InputError("row count mismatch between A and b");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].size() != c_.size()) throw InputError("column count mismatch between A and c");
      if (!(b_[i] > 0.0)) throw InputError("covering rows need b(i) > 0");
      SparseRow row{{}, b_[i]};
      for (std::size_t j = 0; j < a[i].size(); ++j) {
        if (a[i][j] < 0.0) throw InputError("covering rows need A(i,j) >= 0");
        if (a[i][j] > 0.0) row.coeffs.emplace_back(static_cast<int>(j), a[i][j]);
      }
      if (row.coeffs.empty()) throw InputError("row " + std::to_string(i) + " cannot be covered");
      rows_.push_back(std::move(row));
    }
    if (rows_.empty()) throw InputError("covering instance has no rows");
  }

  int num_columns() const { return static_cast<int>(c_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  double column_cost(int j) const { return c_[j]; }
  const SparseRow& row(int i) const { return rows_[i]; }

  OracleRow<int> approx_shortest_row(std::span<const double> x, double) {
    return shortest(x);
  }

  std::optional<OracleRow<int>> find_short_row(std::span<const double> x) {
    OracleRow<int> best = shortest(x);
    if (best.length < 1.0) return best;
    return std::nullopt;
  }

  void rescale(double) {}

 private:
  OracleRow<int> shortest(std::span<const double> x) const {
    int best = 0;
    double best_len = row_length(rows_[0], x);
    for (int i = 1; i < num_rows(); ++i) {
      const double len = row_length(rows_[i], x);
      if (len < best_len) {
        best = i;
        best_len = len;
      }
    }
    return OracleRow<int>{best, rows_[best], best_len};
  }

  std::vector<SparseRow> rows_;
  std::vector<double> b_;
  std::vector<double> c_;
};

}  // namespace sndp
