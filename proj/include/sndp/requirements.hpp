#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sndp/error.hpp"
#include "sndp/graph.hpp"

namespace sndp {

using Requirement = std::int64_t;

// Requirements above this are rejected so that sums over cut edges of
// requirement-sized multiplicities stay far from int64 overflow.
inline constexpr Requirement kMaxRequirement = Requirement{1} << 40;

// Symmetric pairwise connectivity requirements r(u,v), default 0.
class RequirementMatrix {
 public:
  RequirementMatrix() = default;
  explicit RequirementMatrix(int n) : n_(n), r_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const noexcept { return n_; }

  void set(VertexId u, VertexId v, Requirement value) {
    check(u);
    check(v);
    if (u == v) throw InputError("self-requirement r(u,u) is not allowed");
    if (value < 0) throw InputError("requirements must be nonnegative");
    if (value > kMaxRequirement) throw InputError("requirement exceeds supported range");
    r_[index(u, v)] = value;
    r_[index(v, u)] = value;
  }

  Requirement operator()(VertexId u, VertexId v) const { return r_[index(u, v)]; }

  Requirement max_value() const {
    return r_.empty() ? 0 : *std::max_element(r_.begin(), r_.end());
  }

 private:
  void check(VertexId v) const {
    if (v < 0 || v >= n_) throw InputError("requirement vertex " + std::to_string(v) + " out of range");
  }
  std::size_t index(VertexId u, VertexId v) const { return static_cast<std::size_t>(u) * n_ + v; }

  int n_ = 0;
  std::vector<Requirement> r_;
};

// Cut-requirement function over canonical cuts of a fixed ground set. Every
// implementation here is proper: symmetric, maximal, and zero on V.
class ProperFunction {
 public:
  virtual ~ProperFunction() = default;

  virtual int ground_size() const = 0;
  // Upper bound on f over all cuts.
  virtual Requirement max_value() const = 0;

  Requirement operator()(const Cut& cut) const {
    if (cut.ground_size() != ground_size()) {
      throw InputError("cut over a ground set of " + std::to_string(cut.ground_size()) +
                       " vertices, function expects " + std::to_string(ground_size()));
    }
    return evaluate(cut);
  }

 protected:
  virtual Requirement evaluate(const Cut& cut) const = 0;
};

// f(S) = max r(u,v) over u in S, v outside S.
class PairwiseFunction final : public ProperFunction {
 public:
  explicit PairwiseFunction(const RequirementMatrix& r) : n_(r.size()), adjacency_(r.size()) {
    for (VertexId u = 0; u < n_; ++u)
      for (VertexId v = 0; v < n_; ++v)
        if (u != v && r(u, v) > 0) {
          adjacency_[u].emplace_back(v, r(u, v));
          max_ = std::max(max_, r(u, v));
        }
  }

  int ground_size() const override { return n_; }
  Requirement max_value() const override { return max_; }

 protected:
  Requirement evaluate(const Cut& cut) const override {
    Requirement best = 0;
    const auto& side = cut.indicator();
    for (VertexId u = 0; u < n_; ++u) {
      if (!side[u]) continue;
      for (const auto& [v, r] : adjacency_[u])
        if (!side[v] && r > best) best = r;
    }
    return best;
  }

 private:
  int n_;
  Requirement max_ = 0;
  std::vector<std::vector<std::pair<VertexId, Requirement>>> adjacency_;
};

// f composed with a contraction: evaluates the base function on the preimage
// of a cut of the contracted ground set.
class ContractedFunction final : public ProperFunction {
 public:
  // base_to_ground maps each base vertex to its contracted image.
  static std::shared_ptr<const ProperFunction> wrap(std::shared_ptr<const ProperFunction> base,
                                                    std::vector<VertexId> base_to_ground) {
    if (static_cast<int>(base_to_ground.size()) != base->ground_size()) {
      throw InputError("contraction map does not cover the function's ground set");
    }
    if (const auto* inner = dynamic_cast<const ContractedFunction*>(base.get())) {
      std::vector<VertexId> composed(inner->map_.size());
      for (std::size_t v = 0; v < composed.size(); ++v) composed[v] = base_to_ground[inner->map_[v]];
      return wrap(inner->base_, std::move(composed));
    }
    int ground = 0;
    for (VertexId img : base_to_ground) ground = std::max(ground, img + 1);
    return std::shared_ptr<const ProperFunction>(
        new ContractedFunction(std::move(base), std::move(base_to_ground), ground));
  }

  int ground_size() const override { return ground_; }
  Requirement max_value() const override { return base_->max_value(); }

 protected:
  Requirement evaluate(const Cut& cut) const override { return (*base_)(preimage(cut, map_)); }

 private:
  ContractedFunction(std::shared_ptr<const ProperFunction> base, std::vector<VertexId> map, int ground)
      : base_(std::move(base)), map_(std::move(map)), ground_(ground) {}

  std::shared_ptr<const ProperFunction> base_;
  std::vector<VertexId> map_;
  int ground_;
};

inline Requirement eval_f(const ProperFunction& f, const Cut& cut) { return f(cut); }

}  // namespace sndp
