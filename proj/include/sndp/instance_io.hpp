#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sndp/error.hpp"
#include "sndp/graph.hpp"
#include "sndp/requirements.hpp"

namespace sndp {

struct RequirementSpec {
  VertexId u;
  VertexId v;
  Requirement r;

  bool operator==(const RequirementSpec&) const = default;
};

struct InstanceMeta {
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;

  bool operator==(const InstanceMeta&) const = default;
};

struct Instance {
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<RequirementSpec> requirements;
  std::optional<InstanceMeta> meta;

  std::shared_ptr<const Graph> graph() const {
    return std::make_shared<const Graph>(static_cast<int>(vertices.size()), std::span<const EdgeSpec>(edges));
  }

  RequirementMatrix requirement_matrix() const {
    RequirementMatrix r(static_cast<int>(vertices.size()));
    for (const RequirementSpec& q : requirements) r.set(q.u, q.v, q.r);
    return r;
  }

  std::string display_name() const {
    return meta && meta->name ? *meta->name : std::string("unnamed");
  }

  bool operator==(const Instance& o) const {
    if (vertices != o.vertices || requirements != o.requirements || meta != o.meta) return false;
    if (edges.size() != o.edges.size()) return false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].u != o.edges[i].u || edges[i].v != o.edges[i].v || edges[i].cost != o.edges[i].cost) return false;
    }
    return true;
  }
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
  throw InputError("instance " + path + ": " + what);
}

inline const json& field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, std::string("missing field '") + key + "'");
  return *it;
}

inline VertexId vertex_ref(const json& v, const std::map<std::string, VertexId>& index, const std::string& path) {
  if (!v.is_string()) schema_error(path, "expected a vertex name");
  auto it = index.find(v.get<std::string>());
  if (it == index.end()) schema_error(path, "unknown vertex '" + v.get<std::string>() + "'");
  return it->second;
}

}  // namespace detail

inline Instance instance_from_json(const nlohmann::json& doc) {
  using detail::field;
  using detail::schema_error;
  if (!doc.is_object()) schema_error("$", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "vertices" && key != "edges" && key != "requirements" && key != "meta") {
      schema_error("$", "unexpected field '" + key + "'");
    }
  }
  Instance inst;
  std::map<std::string, VertexId> index;

  const auto& vertices = field(doc, "vertices", "$");
  if (!vertices.is_array() || vertices.empty()) schema_error("vertices", "expected a nonempty list of names");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string path = "vertices[" + std::to_string(i) + "]";
    if (!vertices[i].is_string()) schema_error(path, "expected a string");
    const std::string name = vertices[i].get<std::string>();
    if (!index.emplace(name, static_cast<VertexId>(i)).second) schema_error(path, "duplicate vertex '" + name + "'");
    inst.vertices.push_back(name);
  }

  const auto& edges = field(doc, "edges", "$");
  if (!edges.is_array()) schema_error("edges", "expected a list");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "edges[" + std::to_string(i) + "]";
    const auto& e = edges[i];
    if (!e.is_object()) schema_error(path, "expected an object with u, v, cost");
    const VertexId u = detail::vertex_ref(field(e, "u", path), index, path + ".u");
    const VertexId v = detail::vertex_ref(field(e, "v", path), index, path + ".v");
    if (u == v) schema_error(path, "self-loop");
    const auto& c = field(e, "cost", path);
    if (!c.is_number()) schema_error(path + ".cost", "expected a number");
    const double cost = c.get<double>();
    if (!std::isfinite(cost) || cost < 0.0) schema_error(path + ".cost", "cost must be a nonnegative real");
    inst.edges.push_back({u, v, cost});
  }

  const auto& reqs = field(doc, "requirements", "$");
  if (!reqs.is_array()) schema_error("requirements", "expected a list");
  std::set<std::pair<VertexId, VertexId>> seen;
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    const std::string path = "requirements[" + std::to_string(i) + "]";
    const auto& q = reqs[i];
    if (!q.is_object()) schema_error(path, "expected an object with u, v, r");
    const VertexId u = detail::vertex_ref(field(q, "u", path), index, path + ".u");
    const VertexId v = detail::vertex_ref(field(q, "v", path), index, path + ".v");
    if (u == v) schema_error(path, "self-requirement r(u,u) is not allowed");
    const auto& r = field(q, "r", path);
    if (!r.is_number_integer()) schema_error(path + ".r", "expected an integer");
    if (r.is_number_unsigned() ? r.get<std::uint64_t>() > static_cast<std::uint64_t>(kMaxRequirement)
                               : (r.get<std::int64_t>() < 0 || r.get<std::int64_t>() > kMaxRequirement)) {
      schema_error(path + ".r", "requirement must be an integer in [0, 2^40]");
    }
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) schema_error(path, "duplicate requirement pair");
    inst.requirements.push_back({u, v, r.get<Requirement>()});
  }

  if (auto it = doc.find("meta"); it != doc.end()) {
    if (!it->is_object()) schema_error("meta", "expected an object");
    InstanceMeta meta;
    if (auto n = it->find("name"); n != it->end()) {
      if (!n->is_string()) schema_error("meta.name", "expected a string");
      meta.name = n->get<std::string>();
    }
    if (auto s = it->find("seed"); s != it->end()) {
      if (!s->is_number_unsigned()) schema_error("meta.seed", "expected a nonnegative integer");
      meta.seed = s->get<std::uint64_t>();
    }
    inst.meta = meta;
  }
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("instance is not valid JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json doc;
  doc["vertices"] = inst.vertices;
  doc["edges"] = nlohmann::json::array();
  for (const EdgeSpec& e : inst.edges) {
    doc["edges"].push_back({{"u", inst.vertices.at(e.u)}, {"v", inst.vertices.at(e.v)}, {"cost", e.cost}});
  }
  doc["requirements"] = nlohmann::json::array();
  for (const RequirementSpec& q : inst.requirements) {
    doc["requirements"].push_back({{"u", inst.vertices.at(q.u)}, {"v", inst.vertices.at(q.v)}, {"r", q.r}});
  }
  if (inst.meta) {
    nlohmann::json meta = nlohmann::json::object();
    if (inst.meta->name) meta["name"] = *inst.meta->name;
    if (inst.meta->seed) meta["seed"] = *inst.meta->seed;
    doc["meta"] = meta;
  }
  return doc;
}

inline std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

// Random connected multigraph on v0..v{n-1}: a random spanning tree plus each
// remaining pair with probability density, integer costs in [1, 10], and each
// pair demanding r uniform in [1, r_max] with probability 1/2.
inline Instance generate_instance(std::uint64_t seed, int n, double density, int r_max) {
  if (n < 2) throw InputError("generator needs at least 2 vertices");
  if (!(density > 0.0 && density <= 1.0)) throw InputError("density must lie in (0, 1]");
  if (r_max < 0) throw InputError("r_max must be nonnegative");
  std::mt19937_64 rng(seed);
  auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&rng](double p) { return std::bernoulli_distribution(p)(rng); };

  Instance inst;
  for (int i = 0; i < n; ++i) inst.vertices.push_back("v" + std::to_string(i));
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (VertexId v = 1; v < n; ++v) {
    const VertexId u = pick(0, v - 1);
    used[u][v] = true;
    inst.edges.push_back({u, v, static_cast<double>(pick(1, 10))});
  }
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (!used[u][v] && coin(density)) inst.edges.push_back({u, v, static_cast<double>(pick(1, 10))});
  if (r_max > 0) {
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v)
        if (coin(0.5)) inst.requirements.push_back({u, v, pick(1, r_max)});
  }
  std::string name = "gen-n" + std::to_string(n) + "-r" + std::to_string(r_max) + "-s" + std::to_string(seed);
  inst.meta = InstanceMeta{name, seed};
  return inst;
}

}  // namespace sndp
