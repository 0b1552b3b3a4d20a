#pragma once

// JSON and DOT serialization. Diagnostics name the offending field.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "finitetop/error.hpp"
#include "finitetop/homology.hpp"
#include "finitetop/hyperspace.hpp"
#include "finitetop/mccord.hpp"
#include "finitetop/poset.hpp"
#include "finitetop/shape.hpp"
#include "finitetop/simcomplex.hpp"

namespace finitetop::io {

using nlohmann::json;

inline json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(source + ": invalid JSON (" + e.what() + ")");
  }
}

namespace detail {

inline const json& field(const json& j, const char* name, const std::string& source) {
  if (!j.is_object()) throw DomainError(source + ": top level must be a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw DomainError(source + ": missing field '" + name + "'");
  return *it;
}

inline std::string id_of(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw DomainError(where + ": ids must be strings or integers");
}

inline std::vector<std::string> id_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw DomainError(where + ": expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(id_of(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::vector<std::string>> id_lists(const json& v, const std::string& where) {
  if (!v.is_array()) throw DomainError(where + ": expected an array of arrays");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(id_list(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline void require_unique(const std::vector<std::string>& ids, const std::string& where) {
  auto s = ids;
  std::sort(s.begin(), s.end());
  if (auto it = std::adjacent_find(s.begin(), s.end()); it != s.end())
    throw DomainError(where + ": duplicate id '" + *it + "'");
}

inline std::vector<std::string> sorted_ids(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end(), NaturalLess{});
  return ids;
}

template <class Positions>
json id_array(const std::vector<std::string>& ids, const Positions& positions) {
  std::vector<std::string> v;
  for (auto p : positions) v.push_back(ids[static_cast<std::size_t>(p)]);
  return sorted_ids(std::move(v));
}

// Sorted arrays of sorted id arrays: by size, then naturally element by element.
inline json sorted_families(std::vector<std::vector<std::string>> family) {
  for (auto& f : family) std::sort(f.begin(), f.end(), NaturalLess{});
  std::sort(family.begin(), family.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), NaturalLess{});
  });
  return family;
}

inline json big_number(const BigInt& v) {
  if (v <= std::numeric_limits<std::int64_t>::max()) return static_cast<std::int64_t>(v);
  return v.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Posets: { "elements": [...], "covers": [[a,b]...], "t0": bool }

/// Loads and transitively closes a poset. When "t0" is true the space must be T0.
inline FinitePreorder poset_from_json(const json& j, const std::string& source = "poset") {
  auto ids = detail::id_list(detail::field(j, "elements", source), source + ": elements");
  detail::require_unique(ids, source + ": elements");
  std::vector<std::pair<std::string, std::string>> pairs;
  if (j.contains("covers")) {
    const auto& covers = j["covers"];
    if (!covers.is_array()) throw DomainError(source + ": covers: expected an array of pairs");
    for (std::size_t i = 0; i < covers.size(); ++i) {
      const std::string where = source + ": covers[" + std::to_string(i) + "]";
      auto pair = detail::id_list(covers[i], where);
      if (pair.size() != 2) throw DomainError(where + ": a cover is a pair [a,b]");
      for (const auto& id : pair)
        if (std::find(ids.begin(), ids.end(), id) == ids.end())
          throw DomainError(where + ": unknown element '" + id + "'");
      pairs.emplace_back(pair[0], pair[1]);
    }
  }
  auto p = FinitePreorder::canonical(std::move(ids), pairs);
  if (j.contains("t0")) {
    if (!j["t0"].is_boolean()) throw DomainError(source + ": t0: expected a boolean");
    if (j["t0"].get<bool>())
      if (auto bad = t0_violation(p))
        throw DomainError(source + ": t0: declared T0 but '" + p.label(bad->first) + "' and '" +
                          p.label(bad->second) + "' are indistinguishable");
  }
  return p;
}

/// Hasse pairs a<b, plus both directions for distinct equivalent points.
template <FiniteOrder P>
json poset_to_json(const P& p) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < p.size(); ++i) ids.push_back(std::string(p.label(i)));
  std::vector<std::pair<std::size_t, std::size_t>> edges = covers(p);
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (a != b && p.leq(a, b) && p.leq(b, a)) edges.emplace_back(a, b);
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [a, b] : edges) named.emplace_back(ids[a], ids[b]);
  std::sort(named.begin(), named.end(), [](const auto& x, const auto& y) {
    NaturalLess less;
    if (x.first != y.first) return less(x.first, y.first);
    return less(x.second, y.second);
  });
  json cov = json::array();
  for (const auto& [a, b] : named) cov.push_back({a, b});
  return {{"elements", detail::sorted_ids(ids)}, {"covers", cov}, {"t0", is_t0(p)}};
}

// ---------------------------------------------------------------------------
// Hyperspace requests: { "ground": [...], "cap": r | null }

struct HyperspaceRequest {
  std::vector<std::string> ground;
  std::optional<std::size_t> cap;
};

inline HyperspaceRequest hyperspace_request_from_json(const json& j, const std::string& source = "request") {
  HyperspaceRequest r;
  r.ground = detail::id_list(detail::field(j, "ground", source), source + ": ground");
  detail::require_unique(r.ground, source + ": ground");
  if (j.contains("cap") && !j["cap"].is_null()) {
    if (!j["cap"].is_number_unsigned() || j["cap"].get<std::uint64_t>() == 0)
      throw DomainError(source + ": cap: expected a positive integer or null");
    r.cap = j["cap"].get<std::size_t>();
  }
  return r;
}

inline json hyperspace_to_json(const MaterializedHyperspace& h) {
  std::vector<std::vector<std::string>> pts;
  for (std::size_t i = 0; i < h.size(); ++i) pts.push_back(h.point(i).members());
  json cap = h.cap() ? json(*h.cap()) : json(nullptr);
  return {{"cap", cap}, {"ground", detail::sorted_ids(h.ground())}, {"points", detail::sorted_families(pts)},
          {"size", h.size()}};
}

// ---------------------------------------------------------------------------
// Complexes: { "vertices": [...], "maximal": [[...]...] }

inline AbstractComplex complex_from_json(const json& j, const std::string& source = "complex") {
  auto vertices = detail::id_list(detail::field(j, "vertices", source), source + ": vertices");
  detail::require_unique(vertices, source + ": vertices");
  auto maximal = detail::id_lists(detail::field(j, "maximal", source), source + ": maximal");
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    if (maximal[i].empty()) throw DomainError(source + ": maximal[" + std::to_string(i) + "]: simplices are nonempty");
    for (const auto& id : maximal[i])
      if (std::find(vertices.begin(), vertices.end(), id) == vertices.end())
        throw DomainError(source + ": maximal[" + std::to_string(i) + "]: unknown vertex '" + id + "'");
  }
  return AbstractComplex::canonical(std::move(vertices), maximal);
}

inline json complex_to_json(const AbstractComplex& k) {
  return {{"maximal", detail::sorted_families(k.maximal_labels())}, {"vertices", detail::sorted_ids(k.vertices())}};
}

// ---------------------------------------------------------------------------
// Neighborhoods: { "vertices": [...], "members": [[...]...] }

inline SimplicialNeighborhood neighborhood_from_json(const json& j, bool strict, const std::string& source = "neighborhood") {
  auto vertices = detail::id_list(detail::field(j, "vertices", source), source + ": vertices");
  detail::require_unique(vertices, source + ": vertices");
  auto members = detail::id_lists(detail::field(j, "members", source), source + ": members");
  try {
    return SimplicialNeighborhood::from_labels(std::move(vertices), members,
                                               strict ? SimplicialNeighborhood::Load::strict
                                                      : SimplicialNeighborhood::Load::close);
  } catch (const ResourceError&) {
    throw;
  } catch (const DomainError& e) {
    throw DomainError(source + ": " + e.what());
  }
}

inline json neighborhood_to_json(const SimplicialNeighborhood& u) {
  std::vector<std::vector<std::string>> members;
  for (const auto& m : u.members()) {
    std::vector<std::string> ids;
    for (auto v : m) ids.push_back(u.vertices()[v]);
    members.push_back(std::move(ids));
  }
  return {{"members", detail::sorted_families(members)}, {"vertices", detail::sorted_ids(u.vertices())}};
}

// ---------------------------------------------------------------------------
// Covers for the nerve: { "sets": { "name": [...], ... } }

inline std::vector<std::pair<std::string, std::vector<std::string>>> cover_from_json(const json& j,
                                                                                     const std::string& source = "cover") {
  const auto& sets = detail::field(j, "sets", source);
  if (!sets.is_object()) throw DomainError(source + ": sets: expected an object mapping names to members");
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (const auto& [name, members] : sets.items()) {
    auto ids = detail::id_list(members, source + ": sets." + name);
    if (ids.empty()) throw DomainError(source + ": sets." + name + ": cover sets must be nonempty");
    out.emplace_back(name, std::move(ids));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

inline json homology_to_json(const HomologyResult& h) {
  json torsion = json::array();
  for (const auto& t : h.torsion) {
    json row = json::array();
    for (const auto& f : t) row.push_back(detail::big_number(f));
    torsion.push_back(row);
  }
  return {{"betti", h.betti}, {"torsion", torsion}};
}

inline json shape_report_to_json(const ShapeReport& r) {
  json stages = json::array();
  for (std::size_t i = 0; i < r.eps.size(); ++i) {
    json s = homology_to_json(r.homology[i]);
    s["eps"] = r.eps[i];
    s["simplices"] = r.stages[i].simplices().size();
    stages.push_back(s);
  }
  json transitions = json::array();
  for (std::size_t i = 0; i < r.transition.size(); ++i)
    transitions.push_back({{"from", r.eps[i]}, {"rank", r.transition[i]}, {"to", r.eps[i + 1]}});
  return {{"eps", r.eps}, {"homology", "unreduced"}, {"stages", stages}, {"transitions", transitions}};
}

}  // namespace finitetop::io
