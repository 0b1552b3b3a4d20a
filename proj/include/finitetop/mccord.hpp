#pragma once

// Order complexes, face posets, simplicial neighborhoods and the functors
// between finite T0 spaces, simplicial complexes and open subfamilies of 2^V_f.

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "finitetop/error.hpp"
#include "finitetop/hyperspace.hpp"
#include "finitetop/limits.hpp"
#include "finitetop/poset.hpp"
#include "finitetop/simcomplex.hpp"
#include "finitetop/subset.hpp"

namespace finitetop {

/// 𝒦(P): vertices are the points of P, simplices its nonempty chains.
/// Maximal simplices are the maximal chains, found along covering relations.
template <FiniteOrder P>
AbstractComplex order_complex(const P& p) {
  if (auto bad = t0_violation(p))
    throw PreconditionError("order complex requires a T0 space; '" + std::string(p.label(bad->first)) + "' and '" +
                            std::string(p.label(bad->second)) + "' are indistinguishable");
  const std::size_t n = p.size();
  std::vector<std::vector<std::uint32_t>> up_covers(n);
  std::vector<char> minimal(n, 1);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::uint32_t> above;
    for (std::size_t y = 0; y < n; ++y)
      if (y != x && p.leq(x, y)) above.push_back(static_cast<std::uint32_t>(y));
    for (auto y : above) {
      minimal[y] = 0;
      bool cover = true;
      for (auto z : above)
        if (z != y && p.leq(z, y)) {
          cover = false;
          break;
        }
      if (cover) up_covers[x].push_back(y);
    }
  }
  std::vector<Simplex> chains;
  Simplex chain;
  auto walk = [&](auto&& self, std::uint32_t x) -> void {
    chain.push_back(x);
    if (up_covers[x].empty()) {
      Simplex c = chain;
      std::sort(c.begin(), c.end());
      chains.push_back(std::move(c));
      require_faces(chains.size(), "order complex maximal chains");
    } else {
      for (auto y : up_covers[x]) self(self, y);
    }
    chain.pop_back();
  };
  for (std::uint32_t x = 0; x < n; ++x)
    if (minimal[x]) walk(walk, x);
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::string(p.label(i)));
  return AbstractComplex::from_simplices(std::move(ids), std::move(chains));
}

/// 𝒳(K): the simplices of K ordered by inclusion, in canonical simplex order.
inline FinitePreorder face_poset(const AbstractComplex& k, std::size_t max_pairs = kDefaultMaxRelationPairs) {
  const auto faces = k.simplices();
  std::vector<std::string> ids;
  ids.reserve(faces.size());
  for (const auto& s : faces) ids.push_back(k.label(s));
  return FinitePreorder::from_predicate(
      std::move(ids), [&](std::size_t a, std::size_t b) { return is_face_of(faces[a], faces[b]); }, max_pairs);
}

/// 𝒳(φ): σ ↦ φ(σ) between face posets.
inline PointMap<FinitePreorder> functor_X_on_map(const SimplicialMap& phi) {
  auto dom = std::make_shared<const FinitePreorder>(face_poset(phi.domain()));
  auto cod = std::make_shared<const FinitePreorder>(face_poset(phi.codomain()));
  const auto faces = phi.domain().simplices();
  std::vector<std::size_t> a(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i) a[i] = cod->index_of(phi.codomain().label(phi.apply(faces[i])));
  return PointMap<FinitePreorder>(dom, cod, std::move(a));
}

// ---------------------------------------------------------------------------
// Simplicial neighborhoods

/// A down-closed family of nonempty finite subsets of V containing every
/// singleton: the open-subset form of a simplicial complex inside 2^V_f.
class SimplicialNeighborhood {
public:
  enum class Load { close, strict };

  /// With Load::close, missing faces and singletons are added; with
  /// Load::strict, a family that is not already a simplicial neighborhood is
  /// rejected.
  static SimplicialNeighborhood from_members(std::vector<std::string> vertices, std::vector<Simplex> members,
                                             Load mode = Load::close) {
    SimplicialNeighborhood u;
    u.vertices_ = std::move(vertices);
    for (std::uint32_t i = 0; i < u.vertices_.size(); ++i)
      if (!u.vindex_.emplace(u.vertices_[i], i).second)
        throw DomainError("duplicate vertex id '" + u.vertices_[i] + "'");
    std::unordered_set<Simplex, SimplexHash> set;
    for (auto& m : members) {
      if (m.empty()) throw DomainError("neighborhood members must be nonempty");
      std::sort(m.begin(), m.end());
      m.erase(std::unique(m.begin(), m.end()), m.end());
      for (auto v : m)
        if (v >= u.vertices_.size()) throw DomainError("neighborhood member refers to an unknown vertex");
      set.insert(m);
    }
    if (mode == Load::strict) {
      for (std::uint32_t v = 0; v < u.vertices_.size(); ++v)
        if (!set.count(Simplex{v})) throw DomainError("members: singleton {" + u.vertices_[v] + "} is missing");
      for (const auto& m : set)
        for (std::size_t drop = 0; m.size() > 1 && drop < m.size(); ++drop) {
          Simplex f = m;
          f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
          if (!set.count(f)) throw DomainError("members: family is not down-closed (face of " + subset_label(u.vertices_, m) + " missing)");
        }
    } else {
      for (std::uint32_t v = 0; v < u.vertices_.size(); ++v) set.insert(Simplex{v});
      std::vector<Simplex> given(set.begin(), set.end());
      for (const auto& m : given) {
        if (m.size() >= 63) throw ResourceError("member too large to close downward");
        for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << m.size()); ++bits) {
          Simplex f;
          for (std::size_t i = 0; i < m.size(); ++i)
            if (bits >> i & 1) f.push_back(m[i]);
          set.insert(std::move(f));
          require_faces(set.size(), "neighborhood closure");
        }
      }
    }
    u.members_.assign(set.begin(), set.end());
    std::sort(u.members_.begin(), u.members_.end(), SimplexLess{});
    for (std::size_t i = 0; i < u.members_.size(); ++i) u.index_.emplace(u.members_[i], i);
    return u;
  }

  static SimplicialNeighborhood from_labels(std::vector<std::string> vertices,
                                            const std::vector<std::vector<std::string>>& members,
                                            Load mode = Load::close) {
    std::unordered_map<std::string, std::uint32_t> idx;
    for (std::uint32_t i = 0; i < vertices.size(); ++i) idx.emplace(vertices[i], i);
    std::vector<Simplex> m;
    for (const auto& c : members) {
      Simplex s;
      for (const auto& id : c) {
        auto it = idx.find(id);
        if (it == idx.end()) throw DomainError("members: unknown vertex '" + id + "'");
        s.push_back(it->second);
      }
      m.push_back(std::move(s));
    }
    return from_members(std::move(vertices), std::move(m), mode);
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool leq(std::size_t a, std::size_t b) const { return is_face_of(members_[a], members_[b]); }
  std::string label(std::size_t i) const { return subset_label(vertices_, members_[i]); }

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Simplex>& members() const noexcept { return members_; }
  const Simplex& member(std::size_t i) const { return members_[i]; }

  bool contains(const Simplex& s) const { return index_.count(s) != 0; }
  std::optional<std::size_t> find(const Simplex& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::uint32_t vertex_index(const std::string& id) const {
    auto it = vindex_.find(id);
    if (it == vindex_.end()) throw DomainError("unknown vertex '" + id + "'");
    return it->second;
  }

  /// 2^C by subset enumeration.
  std::vector<std::size_t> down_set(std::size_t i) const {
    const auto& m = members_[i];
    std::vector<std::size_t> out;
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << m.size()); ++bits) {
      Simplex f;
      for (std::size_t k = 0; k < m.size(); ++k)
        if (bits >> k & 1) f.push_back(m[k]);
      if (auto j = find(f)) out.push_back(*j);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  std::vector<std::string> vertices_;
  std::vector<Simplex> members_;
  std::unordered_map<Simplex, std::size_t, SimplexHash> index_;
  std::unordered_map<std::string, std::uint32_t> vindex_;
};

static_assert(FiniteOrder<SimplicialNeighborhood>);

/// Down-closed and containing all singletons of the vertex set.
inline bool is_simplicial_neighborhood(const std::vector<std::string>& vertices,
                                       const std::vector<std::vector<std::string>>& family) {
  try {
    SimplicialNeighborhood::from_labels(vertices, family, SimplicialNeighborhood::Load::strict);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

/// 𝒳(K) as a simplicial neighborhood of its vertex set.
inline SimplicialNeighborhood neighborhood_of(const AbstractComplex& k) {
  return SimplicialNeighborhood::from_members(k.vertices(), k.simplices(), SimplicialNeighborhood::Load::strict);
}

/// 𝒳(𝒦(P)) embedded in 2^P_f: all nonempty chains of P, as subsets of P.
template <FiniteOrder P>
SimplicialNeighborhood embed_weak(const P& p) {
  const auto k = order_complex(p);
  return SimplicialNeighborhood::from_members(k.vertices(), k.simplices(), SimplicialNeighborhood::Load::strict);
}

/// 𝒴(U): vertices are the singletons, simplices all members.
inline AbstractComplex functor_Y(const SimplicialNeighborhood& u) {
  return AbstractComplex::from_simplices(u.vertices(), u.members());
}

/// 𝒳(φ) between the neighborhoods of the domain and codomain.
inline PointMap<SimplicialNeighborhood> hypersimplicial_map_of(const SimplicialMap& phi) {
  auto dom = std::make_shared<const SimplicialNeighborhood>(neighborhood_of(phi.domain()));
  auto cod = std::make_shared<const SimplicialNeighborhood>(neighborhood_of(phi.codomain()));
  std::vector<std::size_t> a(dom->size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = *cod->find(phi.apply(dom->member(i)));
  return PointMap<SimplicialNeighborhood>(dom, cod, std::move(a));
}

/// Continuous and open.
inline bool is_hypersimplicial(const PointMap<SimplicialNeighborhood>& psi) {
  return is_continuous(psi) && is_open_map(psi);
}

/// ψ(2^C) = 2^{ψ(C)} for every member C (equivalent to being hypersimplicial).
inline bool preserves_min_neighborhoods(const PointMap<SimplicialNeighborhood>& psi) {
  const auto& dom = psi.domain();
  const auto& cod = psi.codomain();
  for (std::size_t c = 0; c < dom.size(); ++c) {
    std::vector<std::size_t> image;
    for (auto d : dom.down_set(c)) image.push_back(psi(d));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (image != cod.down_set(psi(c))) return false;
  }
  return true;
}

/// 𝒴(ψ): v₁ ↦ v₂ where ψ({v₁}) = {v₂}.
inline SimplicialMap functor_Y_on_map(const PointMap<SimplicialNeighborhood>& psi) {
  if (!is_hypersimplicial(psi)) throw PreconditionError("functor Y needs a continuous and open map");
  const auto& dom = psi.domain();
  const auto& cod = psi.codomain();
  std::vector<std::uint32_t> v(dom.vertices().size());
  for (std::uint32_t i = 0; i < v.size(); ++i) {
    const auto& img = cod.member(psi(*dom.find(Simplex{i})));
    if (img.size() != 1) throw PreconditionError("hypersimplicial map sent a singleton to a non-singleton");
    v[i] = img.front();
  }
  return SimplicialMap(std::make_shared<const AbstractComplex>(functor_Y(dom)),
                       std::make_shared<const AbstractComplex>(functor_Y(cod)), std::move(v));
}

// ---------------------------------------------------------------------------
// Embeddings into hyperspaces

/// Raised when ρ is not injective; names the two points with equal images.
class NotT0Error : public PreconditionError {
public:
  NotT0Error(std::string a, std::string b)
      : PreconditionError("space is not T0: ρ(" + a + ") = ρ(" + b + ")"), first(std::move(a)), second(std::move(b)) {}
  std::string first, second;
};

/// ρ(x) = B_x for every point, in the order of P.
struct RhoImage {
  std::vector<Subset> image;
};

namespace detail {
template <FiniteOrder P>
RhoImage rho_impl(const P& p, const std::vector<std::string>& names) {
  if (auto bad = t0_violation(p)) throw NotT0Error(std::string(p.label(bad->first)), std::string(p.label(bad->second)));
  RhoImage r;
  for (std::size_t x = 0; x < p.size(); ++x) {
    std::vector<std::string> m;
    for (auto y : down_set(p, x)) m.push_back(names[y]);
    r.image.emplace_back(std::move(m));
  }
  return r;
}
}  // namespace detail

template <FiniteOrder P>
RhoImage rho_embedding(const P& p) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p.size(); ++i) names.push_back(std::string(p.label(i)));
  return detail::rho_impl(p, names);
}

/// ρ(y) = {α(y_i) : y_i ∈ B_y} for an injection α of P into a ground set.
template <FiniteOrder P>
RhoImage rho_with_injection(const P& p, const std::map<std::string, std::string>& alpha) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto it = alpha.find(std::string(p.label(i)));
    if (it == alpha.end()) throw DomainError("α is not defined on '" + std::string(p.label(i)) + "'");
    names.push_back(it->second);
  }
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw DomainError("α is not injective");
  return detail::rho_impl(p, names);
}

/// leq(x, y) ⟺ ρ(x) ⊆ ρ(y), and ρ injective.
template <FiniteOrder P>
bool is_order_embedding(const P& p, const RhoImage& r) {
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (p.leq(x, y) != r.image[x].is_subset_of(r.image[y])) return false;
      if (x != y && r.image[x] == r.image[y]) return false;
    }
  return true;
}

/// Is the image down-closed in 2^Z_f (every nonempty subset of an image point is an image point)?
inline bool image_is_open(const RhoImage& r) {
  std::set<Subset> pts(r.image.begin(), r.image.end());
  for (const auto& c : r.image) {
    const auto& m = c.members();
    if (m.size() >= 63) return false;
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << m.size()); ++bits) {
      std::vector<std::string> f;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (bits >> i & 1) f.push_back(m[i]);
      if (!pts.count(Subset(std::move(f)))) return false;
    }
  }
  return true;
}

/// Every image point is a point of h, and the ρ order matches h's order.
template <FiniteOrder P>
bool embeds_into(const P& p, const RhoImage& r, const MaterializedHyperspace& h) {
  std::vector<std::size_t> at;
  for (const auto& c : r.image) {
    if (!h.contains(c)) return false;
    at.push_back(h.index_of(c));
  }
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.leq(x, y) != h.leq(at[x], at[y])) return false;
  return true;
}

/// Is x ↦ {x}, into the hyperspace over P's points, continuous? This holds
/// exactly when P is discrete (an antichain).
inline bool singleton_map_continuity(const FinitePreorder& p) {
  if (p.size() == 0) return true;
  auto dom = std::make_shared<const FinitePreorder>(p);
  // singletons form the open subspace 2^P_1, so continuity can be tested there
  auto cod = std::make_shared<const MaterializedHyperspace>(MaterializedHyperspace::build(p.ids(), 1));
  std::vector<std::size_t> a(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) a[x] = cod->index_of(Subset{p.label(x)});
  return is_continuous(PointMap<FinitePreorder, MaterializedHyperspace>(dom, cod, std::move(a)));
}

// ---------------------------------------------------------------------------
// Neighborhood predicates

/// max |C| − 1 over members (0 for the empty family).
inline int neighborhood_dimension(const SimplicialNeighborhood& u) {
  std::size_t top = 0;
  for (const auto& m : u.members()) top = std::max(top, m.size());
  return top == 0 ? 0 : static_cast<int>(top) - 1;
}

/// Every singleton has a finite up-set; always true for a materialized family.
inline bool is_locally_finite_neighborhood(const SimplicialNeighborhood& u) {
  for (std::uint32_t v = 0; v < u.vertices().size(); ++v)
    if (!u.contains(Simplex{v})) return false;
  return true;
}

/// W ⊆ U is full when, for every C ∈ U whose vertices all lie in W, the
/// up-sets of C in U and in W coincide.
inline bool is_full_subneighborhood(const SimplicialNeighborhood& w, const SimplicialNeighborhood& u) {
  // translate W into U's vertex positions
  std::vector<std::uint32_t> to_u(w.vertices().size());
  for (std::uint32_t i = 0; i < to_u.size(); ++i) to_u[i] = u.vertex_index(w.vertices()[i]);
  std::unordered_set<Simplex, SimplexHash> in_w;
  for (const auto& m : w.members()) {
    Simplex s;
    for (auto v : m) s.push_back(to_u[v]);
    std::sort(s.begin(), s.end());
    if (!u.contains(s)) throw DomainError("W is not contained in U");
    in_w.insert(std::move(s));
  }
  for (const auto& c : u.members()) {
    bool vertices_in_w = true;
    for (auto v : c)
      if (!in_w.count(Simplex{v})) {
        vertices_in_w = false;
        break;
      }
    if (!vertices_in_w) continue;
    for (const auto& d : u.members())
      if (is_face_of(c, d) && !in_w.count(d)) return false;
  }
  return true;
}

}  // namespace finitetop
