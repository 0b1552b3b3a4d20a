#pragma once

// Hyperspaces of discrete sets with the upper semifinite topology.
//
// For a discrete ground set X the points are nonempty finite subsets, the
// specialization order is inclusion and the minimal neighborhood of C is the
// family of nonempty subsets of C.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "finitetop/error.hpp"
#include "finitetop/poset.hpp"
#include "finitetop/subset.hpp"

namespace finitetop {

inline constexpr std::size_t kMaxUncappedGround = 16;
inline constexpr std::size_t kMaxCappedGround = 64;
inline constexpr std::size_t kMaxCapForWideGround = 3;
inline constexpr std::size_t kMaxAutomorphismGround = 8;

/// 2^X_f (or 2^X_r with a cardinality cap r) for a finite discrete X.
///
/// Points are stored as bitmasks over ground positions and listed by
/// cardinality, then lexicographically.
class MaterializedHyperspace {
public:
  static MaterializedHyperspace build(std::vector<std::string> ground, std::optional<std::size_t> cap = {}) {
    if (ground.empty()) throw DomainError("hyperspace ground set must be nonempty");
    if (cap && *cap == 0) throw DomainError("hyperspace cap must be at least 1");
    std::sort(ground.begin(), ground.end(), NaturalLess{});
    if (std::adjacent_find(ground.begin(), ground.end()) != ground.end())
      throw DomainError("hyperspace ground set has duplicate ids");
    const std::size_t n = ground.size();
    const bool narrow_cap = cap && *cap <= kMaxCapForWideGround;
    if (n > kMaxUncappedGround && !(narrow_cap && n <= kMaxCappedGround))
      throw ResourceError("hyperspace over " + std::to_string(n) + " points exceeds the size guard (n <= " +
                          std::to_string(kMaxUncappedGround) + ", or n <= " + std::to_string(kMaxCappedGround) +
                          " with cap <= " + std::to_string(kMaxCapForWideGround) + ")");

    MaterializedHyperspace h;
    h.ground_ = std::move(ground);
    h.cap_ = cap;
    const std::size_t top = cap ? std::min(*cap, n) : n;
    for (std::size_t k = 1; k <= top; ++k) {
      // positions of a k-combination, advanced in lexicographic order
      std::vector<std::size_t> pos(k);
      std::iota(pos.begin(), pos.end(), 0);
      while (true) {
        std::uint64_t m = 0;
        for (auto p : pos) m |= std::uint64_t{1} << p;
        h.masks_.push_back(m);
        std::size_t i = k;
        while (i > 0 && pos[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++pos[i - 1];
        for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
      }
    }
    h.index_.reserve(h.masks_.size());
    for (std::size_t i = 0; i < h.masks_.size(); ++i) h.index_.emplace(h.masks_[i], i);
    return h;
  }

  std::size_t size() const noexcept { return masks_.size(); }
  bool leq(std::size_t a, std::size_t b) const { return (masks_[a] & ~masks_[b]) == 0; }
  std::string label(std::size_t i) const { return point(i).label(); }

  const std::vector<std::string>& ground() const noexcept { return ground_; }
  std::optional<std::size_t> cap() const noexcept { return cap_; }
  bool is_capped() const noexcept { return cap_ && *cap_ < ground_.size(); }

  std::uint64_t mask(std::size_t i) const { return masks_[i]; }
  std::size_t cardinality(std::size_t i) const { return static_cast<std::size_t>(std::popcount(masks_[i])); }

  Subset point(std::size_t i) const {
    std::vector<std::string> m;
    for (std::uint64_t bits = masks_[i]; bits; bits &= bits - 1) m.push_back(ground_[std::countr_zero(bits)]);
    return Subset(std::move(m));
  }

  std::optional<std::size_t> find_mask(std::uint64_t m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t ground_position(const std::string& id) const {
    auto it = std::lower_bound(ground_.begin(), ground_.end(), id, NaturalLess{});
    if (it == ground_.end() || *it != id) throw DomainError("'" + id + "' is not in the ground set");
    return static_cast<std::size_t>(it - ground_.begin());
  }

  std::uint64_t mask_of(const Subset& c) const {
    std::uint64_t m = 0;
    for (const auto& x : c) m |= std::uint64_t{1} << ground_position(x);
    return m;
  }

  bool contains(const Subset& c) const {
    for (const auto& x : c)
      if (!std::binary_search(ground_.begin(), ground_.end(), x, NaturalLess{})) return false;
    return find_mask(mask_of(c)).has_value();
  }

  std::size_t index_of(const Subset& c) const {
    if (!contains(c)) throw DomainError(c.label() + " is not a point of this hyperspace");
    return *find_mask(mask_of(c));
  }

  /// Minimal neighborhood by submask enumeration, ascending point order.
  std::vector<std::size_t> down_set(std::size_t i) const {
    std::vector<std::size_t> out;
    const std::uint64_t m = masks_[i];
    for (std::uint64_t s = m; s; s = (s - 1) & m)
      if (auto j = find_mask(s)) out.push_back(*j);
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  std::vector<std::string> ground_;
  std::optional<std::size_t> cap_;
  std::vector<std::uint64_t> masks_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

static_assert(FiniteOrder<MaterializedHyperspace>);

inline MaterializedHyperspace build_power_finite(std::vector<std::string> ground,
                                                 std::optional<std::size_t> cap = {}) {
  return MaterializedHyperspace::build(std::move(ground), cap);
}

/// Ground ids "1".."n".
inline std::vector<std::string> numbered_ground(std::size_t n) {
  std::vector<std::string> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = std::to_string(i + 1);
  return g;
}

inline MaterializedHyperspace power_finite(std::size_t n, std::optional<std::size_t> cap = {}) {
  if (n == 0) throw DomainError("hyperspace ground set must be nonempty");
  return build_power_finite(numbered_ground(n), cap);
}

/// B_C = 2^C \ {∅}.
inline std::vector<Subset> min_nbhd_hyper(const MaterializedHyperspace& h, const Subset& c) {
  std::vector<Subset> out;
  for (auto j : h.down_set(h.index_of(c))) out.push_back(h.point(j));
  return out;
}

namespace detail {
inline void require_permutation(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) throw PreconditionError("elevation needs a bijection of the whole ground set");
  std::vector<char> hit(n, 0);
  for (auto p : perm) {
    if (p >= n || hit[p]) throw PreconditionError("elevation needs a bijection of the ground set");
    hit[p] = 1;
  }
}

inline std::uint64_t image_mask(std::uint64_t m, const std::vector<std::size_t>& perm) {
  std::uint64_t out = 0;
  for (; m; m &= m - 1) out |= std::uint64_t{1} << perm[std::countr_zero(m)];
  return out;
}
}  // namespace detail

/// The elevation 2^γ : C ↦ γ(C) of a ground bijection given by positions.
inline PointMap<MaterializedHyperspace> elevation(std::shared_ptr<const MaterializedHyperspace> h,
                                                  const std::vector<std::size_t>& perm) {
  detail::require_permutation(perm, h->ground().size());
  std::vector<std::size_t> a(h->size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = *h->find_mask(detail::image_mask(h->mask(i), perm));
  return PointMap<MaterializedHyperspace>(h, h, std::move(a));
}

/// Same, with γ given by ground ids.
inline PointMap<MaterializedHyperspace> elevation(std::shared_ptr<const MaterializedHyperspace> h,
                                                  const std::map<std::string, std::string>& gamma) {
  const std::size_t n = h->ground().size();
  if (gamma.size() != n) throw PreconditionError("elevation needs γ defined on the whole ground set");
  std::vector<std::size_t> perm(n);
  for (const auto& [from, to] : gamma) {
    try {
      perm[h->ground_position(from)] = h->ground_position(to);
    } catch (const DomainError& e) {
      throw PreconditionError(e.what());
    }
  }
  return elevation(std::move(h), perm);
}

namespace detail {
// Union-extension of an atom permutation is an automorphism iff it is a
// bijection on points that sends covers C ⋖ C∪{e} to covers. Covers are
// then matched bijectively, so the inverse preserves them as well.
inline bool extends_to_automorphism(const MaterializedHyperspace& h, const std::vector<std::size_t>& perm) {
  const std::size_t n = h.ground().size();
  std::vector<char> hit(h.size(), 0);
  std::vector<std::uint64_t> img(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    auto j = h.find_mask(image_mask(h.mask(i), perm));
    if (!j || hit[*j]) return false;
    hit[*j] = 1;
    img[i] = h.mask(*j);
  }
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t e = 0; e < n; ++e) {
      const std::uint64_t bit = std::uint64_t{1} << e;
      if (h.mask(i) & bit) continue;
      auto up = h.find_mask(h.mask(i) | bit);
      if (!up) continue;
      const std::uint64_t lo = img[i], hi = img[*up];
      if ((lo & ~hi) != 0 || std::popcount(hi) != std::popcount(lo) + 1) return false;
    }
  return true;
}

inline void require_uncapped_small(const MaterializedHyperspace& h, const char* what) {
  if (h.is_capped()) throw PreconditionError(std::string(what) + " requires an uncapped hyperspace");
  if (h.ground().size() > kMaxAutomorphismGround)
    throw ResourceError(std::string(what) + ": ground of size " + std::to_string(h.ground().size()) +
                        " exceeds the enumeration guard of " + std::to_string(kMaxAutomorphismGround));
}
}  // namespace detail

/// Number of self-homeomorphisms of 2^X_f.
///
/// Homeomorphisms send atoms (points with a one-point minimal neighborhood)
/// to atoms, so every candidate is the union-extension of a permutation of
/// the atoms; each candidate is verified before it is counted.
inline std::uint64_t automorphism_group_order(const MaterializedHyperspace& h) {
  detail::require_uncapped_small(h, "automorphism enumeration");
  std::vector<std::size_t> atoms;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h.down_set(i).size() == 1) atoms.push_back(i);
  std::vector<std::size_t> atom_pos(atoms.size());
  for (std::size_t k = 0; k < atoms.size(); ++k) atom_pos[k] = static_cast<std::size_t>(std::countr_zero(h.mask(atoms[k])));

  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t count = 0;
  std::vector<std::size_t> perm(h.ground().size());
  do {
    for (std::size_t k = 0; k < atoms.size(); ++k) perm[atom_pos[k]] = atom_pos[order[k]];
    if (detail::extends_to_automorphism(h, perm)) ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  return count;
}

inline std::uint64_t factorial(std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= k; ++i) r *= i;
  return r;
}

/// Number of homeomorphisms f of 2^X_f with f(C) = D.
///
/// Enumerates elevations for small grounds; beyond the enumeration guard the
/// count |C|!·(n−|C|)! (or 0 when |C| ≠ |D|) is returned directly.
inline std::uint64_t count_homeos_sending(const MaterializedHyperspace& h, const Subset& c, const Subset& d) {
  if (h.is_capped()) throw PreconditionError("homeomorphism count requires an uncapped hyperspace");
  const std::uint64_t cm = h.mask_of(c), dm = h.mask_of(d);
  const std::size_t n = h.ground().size();
  if (n > kMaxAutomorphismGround) {
    if (c.size() != d.size()) return 0;
    return factorial(c.size()) * factorial(n - c.size());
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    if (detail::image_mask(cm, perm) == dm && detail::extends_to_automorphism(h, perm)) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

inline constexpr std::size_t kMaxFiniteSpaceForHyperspace = 20;

/// 2^P_u for a finite space P: nonempty closed sets (up-sets) with the
/// specialization preorder C ≼ D ⟺ C ⊆ ⋃_{x∈D} B_x. May fail T0.
inline FinitePreorder hyperspace_of_finite_space(const FinitePreorder& p,
                                                 std::size_t max_pairs = kDefaultMaxRelationPairs) {
  const std::size_t n = p.size();
  if (n == 0) throw DomainError("hyperspace of an empty space");
  if (n > kMaxFiniteSpaceForHyperspace)
    throw ResourceError("hyperspace_of_finite_space is limited to " +
                        std::to_string(kMaxFiniteSpaceForHyperspace) + " points");
  std::vector<std::uint32_t> up(n, 0), down(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (p.leq(a, b)) {
        up[a] |= std::uint32_t{1} << b;
        down[b] |= std::uint32_t{1} << a;
      }
  std::vector<std::uint32_t> closed;
  for (std::uint32_t m = 1; m < (std::uint32_t{1} << n); ++m) {
    bool ok = true;
    for (std::uint32_t bits = m; bits && ok; bits &= bits - 1)
      if ((up[std::countr_zero(bits)] & ~m) != 0) ok = false;
    if (ok) closed.push_back(m);
  }
  auto positions = [](std::uint32_t m) {
    std::vector<std::size_t> v;
    for (; m; m &= m - 1) v.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return v;
  };
  std::sort(closed.begin(), closed.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    return positions(a) < positions(b);
  });
  std::vector<std::uint32_t> down_of(closed.size(), 0);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < closed.size(); ++i) {
    for (std::uint32_t bits = closed[i]; bits; bits &= bits - 1) down_of[i] |= down[std::countr_zero(bits)];
    ids.push_back(subset_label(p.ids(), positions(closed[i])));
  }
  return FinitePreorder::from_predicate(
      std::move(ids), [&](std::size_t i, std::size_t j) { return (closed[i] & ~down_of[j]) == 0; }, max_pairs);
}

// ---------------------------------------------------------------------------
// Countable ground: 2^ℕ_f, answered on demand.

/// A possibly infinite cardinal as reported by lazy queries.
struct Cardinality {
  bool infinite = false;
  std::uint64_t value = 0;

  static Cardinality finite(std::uint64_t v) { return {false, v}; }
  static Cardinality infinity() { return {true, 0}; }
  friend bool operator==(const Cardinality&, const Cardinality&) = default;
  std::string to_string() const { return infinite ? "infinite" : std::to_string(value); }
};

inline constexpr std::size_t kMaxLazyNeighborhoodSize = 20;

/// 2^ℕ_f with ℕ = {1, 2, 3, ...}. Locally finite but not strongly locally finite.
class LazyHyperspace {
public:
  bool contains(const NatSubset& c) const {
    check(c);
    return true;
  }

  /// Raw membership query; the empty set is not a point.
  bool contains(const std::vector<std::uint64_t>& members) const {
    if (members.empty()) throw DomainError("the empty set is not a point of the hyperspace");
    return contains(NatSubset(members));
  }

  bool leq(const NatSubset& c, const NatSubset& d) const {
    check(c);
    check(d);
    return c.is_subset_of(d);
  }

  std::vector<NatSubset> min_nbhd(const NatSubset& c) const {
    check(c);
    if (c.size() > kMaxLazyNeighborhoodSize)
      throw ResourceError("minimal neighborhood enumeration limited to sets of size " +
                          std::to_string(kMaxLazyNeighborhoodSize));
    std::vector<NatSubset> out;
    const auto& m = c.members();
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << m.size()); ++s) {
      std::vector<std::uint64_t> v;
      for (std::uint64_t bits = s; bits; bits &= bits - 1) v.push_back(m[std::countr_zero(bits)]);
      out.emplace_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Cardinality down_degree(const NatSubset& c) const {
    check(c);
    if (c.size() >= 64) return Cardinality::infinity();  // not representable, never finite-enumerated
    return Cardinality::finite((std::uint64_t{1} << c.size()) - 1);
  }

  /// Every C lies below C ∪ {k} for each of the infinitely many k ∉ C.
  Cardinality up_degree(const NatSubset& c) const {
    check(c);
    return Cardinality::infinity();
  }

  bool is_locally_finite() const { return true; }
  bool is_strongly_locally_finite() const { return false; }

private:
  static void check(const NatSubset& c) {
    if (c.members().front() == 0) throw DomainError("ground set is ℕ = {1, 2, ...}; 0 is not an element");
  }
};

/// A point of 2^ℕ_f ∪ {ℕ}: either a finite subset or the extension point ⊤.
class ExtendedPoint {
public:
  explicit ExtendedPoint(NatSubset c) : finite_(std::move(c)) {}
  static ExtendedPoint top() { return ExtendedPoint(); }

  bool is_top() const noexcept { return !finite_.has_value(); }
  const NatSubset& subset() const {
    if (!finite_) throw DomainError("⊤ has no finite subset");
    return *finite_;
  }
  std::string label() const { return finite_ ? finite_->label() : std::string("⊤"); }

private:
  ExtendedPoint() = default;
  std::optional<NatSubset> finite_;
};

/// A minimal neighborhood: either an enumerated finite family or the whole space.
struct Neighborhood {
  bool whole = false;
  std::vector<NatSubset> members;
};

enum class ExtensionKind { alexandroff, non_hausdorff_cone };

/// One-point extension of 2^ℕ_f by ⊤, placed above every finite subset.
class ExtendedHyperspace {
public:
  ExtendedHyperspace(LazyHyperspace base, ExtensionKind kind) : base_(base), kind_(kind) {}

  const LazyHyperspace& base() const noexcept { return base_; }
  ExtensionKind kind() const noexcept { return kind_; }

  bool leq(const ExtendedPoint& a, const ExtendedPoint& b) const {
    if (b.is_top()) return true;
    if (a.is_top()) return false;
    return base_.leq(a.subset(), b.subset());
  }

  Neighborhood min_nbhd(const ExtendedPoint& x) const {
    if (x.is_top()) return Neighborhood{true, {}};
    return Neighborhood{false, base_.min_nbhd(x.subset())};
  }

  /// Open sets containing ⊤. For the Alexandroff extension these are the
  /// complements of closed compact subsets of the base; over an infinite
  /// ground the only such subset is ∅, so both extensions agree.
  std::vector<Neighborhood> opens_containing_top() const { return {Neighborhood{true, {}}}; }

  /// Is the given finite family (plus ⊤ when requested) open? A finite family
  /// never exhausts the infinite base, so no such set containing ⊤ is open.
  bool is_open(const std::vector<NatSubset>& family, bool with_top) const {
    if (with_top) return false;
    for (const auto& c : family) {
      for (const auto& d : base_.min_nbhd(c))
        if (std::find(family.begin(), family.end(), d) == family.end()) return false;
    }
    return true;
  }

private:
  LazyHyperspace base_;
  ExtensionKind kind_;
};

inline ExtendedHyperspace alexandroff_extension(const LazyHyperspace& l) {
  return ExtendedHyperspace(l, ExtensionKind::alexandroff);
}

inline ExtendedHyperspace non_hausdorff_cone(const LazyHyperspace& l) {
  return ExtendedHyperspace(l, ExtensionKind::non_hausdorff_cone);
}

/// Two extensions have the same topology iff their minimal neighborhoods
/// agree on the probe points and on ⊤.
inline bool same_topology(const ExtendedHyperspace& a, const ExtendedHyperspace& b,
                          const std::vector<NatSubset>& probes) {
  auto same = [](const Neighborhood& x, const Neighborhood& y) {
    return x.whole == y.whole && x.members == y.members;
  };
  if (!same(a.min_nbhd(ExtendedPoint::top()), b.min_nbhd(ExtendedPoint::top()))) return false;
  if (a.opens_containing_top().size() != b.opens_containing_top().size()) return false;
  for (const auto& c : probes)
    if (!same(a.min_nbhd(ExtendedPoint(c)), b.min_nbhd(ExtendedPoint(c)))) return false;
  return true;
}

}  // namespace finitetop
