#pragma once

// Finite T0 Alexandroff spaces as (pre)orders.
//
// Convention used throughout the library: open sets are down-sets. The
// minimal neighborhood of x is therefore the down-set of x, the closure of a
// point is its up-set, and continuity between Alexandroff spaces is
// monotonicity.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "finitetop/error.hpp"
#include "finitetop/limits.hpp"
#include "finitetop/subset.hpp"

namespace finitetop {

/// Anything that behaves like a finite preordered set with indexed points.
template <class P>
concept FiniteOrder = requires(const P& p, std::size_t i) {
  { p.size() } -> std::convertible_to<std::size_t>;
  { p.leq(i, i) } -> std::same_as<bool>;
  { p.label(i) } -> std::convertible_to<std::string>;
};

/// A finite set with a reflexive, transitive relation, stored as bitset rows.
///
/// Element order is kept as given; `canonical` sorts opaque ids first.
class FinitePreorder {
public:
  using Row = boost::dynamic_bitset<>;

  FinitePreorder() = default;

  /// Builds from ids and relation pairs (a, b) meaning a <= b; the relation is
  /// closed reflexively and transitively. Throws ResourceError when |ids|^2
  /// exceeds `max_pairs`.
  FinitePreorder(std::vector<std::string> ids,
                 const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                 std::size_t max_pairs = kDefaultMaxRelationPairs)
      : ids_(std::move(ids)) {
    init_rows(max_pairs);
    for (auto [a, b] : pairs) {
      if (a >= ids_.size() || b >= ids_.size()) throw DomainError("relation pair out of range");
      rows_[a].set(b);
    }
    close();
  }

  template <class Pred>
    requires std::predicate<Pred, std::size_t, std::size_t>
  static FinitePreorder from_predicate(std::vector<std::string> ids, Pred&& pred,
                                       std::size_t max_pairs = kDefaultMaxRelationPairs) {
    FinitePreorder p;
    p.ids_ = std::move(ids);
    p.init_rows(max_pairs);
    const std::size_t n = p.ids_.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && pred(i, j)) p.rows_[i].set(j);
    p.close();
    return p;
  }

  /// Sorts ids into canonical (natural) order, then builds from named pairs.
  static FinitePreorder canonical(std::vector<std::string> ids,
                                  const std::vector<std::pair<std::string, std::string>>& pairs,
                                  std::size_t max_pairs = kDefaultMaxRelationPairs) {
    std::sort(ids.begin(), ids.end(), NaturalLess{});
    FinitePreorder shell;
    shell.ids_ = ids;
    shell.build_index();
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    idx.reserve(pairs.size());
    for (const auto& [a, b] : pairs) idx.emplace_back(shell.index_of(a), shell.index_of(b));
    return FinitePreorder(std::move(ids), idx, max_pairs);
  }

  std::size_t size() const noexcept { return ids_.size(); }
  bool leq(std::size_t a, std::size_t b) const { return rows_[a].test(b); }
  const std::string& label(std::size_t i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  /// Up-set of a as a bitset row (row a holds {b : a <= b}).
  const Row& up_row(std::size_t a) const { return rows_[a]; }

  bool contains(const std::string& id) const { return index_.count(id) != 0; }

  std::size_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw DomainError("unknown element id '" + id + "'");
    return it->second;
  }

private:
  void init_rows(std::size_t max_pairs) {
    const std::size_t n = ids_.size();
    if (n != 0 && n > max_pairs / n)
      throw ResourceError("preorder with " + std::to_string(n) + " elements exceeds the relation cap of " +
                          std::to_string(max_pairs) + " pairs");
    build_index();
    rows_.assign(n, Row(n));
    for (std::size_t i = 0; i < n; ++i) rows_[i].set(i);
  }

  void build_index() {
    index_.clear();
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (!index_.emplace(ids_[i], i).second) throw DomainError("duplicate element id '" + ids_[i] + "'");
  }

  void close() {
    const std::size_t n = ids_.size();
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (rows_[i].test(k)) rows_[i] |= rows_[k];
  }

  std::vector<std::string> ids_;
  std::vector<Row> rows_;
  std::unordered_map<std::string, std::size_t> index_;
};

static_assert(FiniteOrder<FinitePreorder>);

/// A total function between the points of two finite orders.
template <FiniteOrder Dom, FiniteOrder Cod = Dom>
class PointMap {
public:
  PointMap(std::shared_ptr<const Dom> domain, std::shared_ptr<const Cod> codomain,
           std::vector<std::size_t> assignment)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), assignment_(std::move(assignment)) {
    if (!domain_ || !codomain_) throw DomainError("point map needs a domain and a codomain");
    if (assignment_.size() != domain_->size())
      throw DomainError("point map must assign exactly one image to every domain element");
    for (auto y : assignment_)
      if (y >= codomain_->size()) throw DomainError("point map image outside the codomain");
  }

  const Dom& domain() const noexcept { return *domain_; }
  const Cod& codomain() const noexcept { return *codomain_; }
  const std::shared_ptr<const Dom>& domain_ptr() const noexcept { return domain_; }
  const std::shared_ptr<const Cod>& codomain_ptr() const noexcept { return codomain_; }
  const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }
  std::size_t operator()(std::size_t x) const { return assignment_.at(x); }

private:
  std::shared_ptr<const Dom> domain_;
  std::shared_ptr<const Cod> codomain_;
  std::vector<std::size_t> assignment_;
};

template <FiniteOrder A, FiniteOrder B, FiniteOrder C>
PointMap<A, C> compose(const PointMap<B, C>& g, const PointMap<A, B>& f) {
  std::vector<std::size_t> out(f.domain().size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = g(f(x));
  return PointMap<A, C>(f.domain_ptr(), g.codomain_ptr(), std::move(out));
}

template <FiniteOrder P>
PointMap<P> identity_map(std::shared_ptr<const P> p) {
  std::vector<std::size_t> a(p->size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
  return PointMap<P>(p, p, std::move(a));
}

// ---------------------------------------------------------------------------
// Neighborhoods and closures

/// Minimal neighborhood B_x = {y : y <= x}, in point order.
template <FiniteOrder P>
std::vector<std::size_t> down_set(const P& p, std::size_t x) {
  if constexpr (requires { p.down_set(x); }) {
    return p.down_set(x);
  } else {
    std::vector<std::size_t> out;
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.leq(y, x)) out.push_back(y);
    return out;
  }
}

template <FiniteOrder P>
std::vector<std::size_t> up_set(const P& p, std::size_t x) {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < p.size(); ++y)
    if (p.leq(x, y)) out.push_back(y);
  return out;
}

/// The smallest open set containing `id`.
inline std::vector<std::string> min_neighborhood(const FinitePreorder& p, const std::string& id) {
  std::vector<std::string> out;
  for (auto y : down_set(p, p.index_of(id))) out.push_back(p.label(y));
  return out;
}

/// Closure of a set of points: its up-set.
template <FiniteOrder P>
std::vector<std::size_t> closure(const P& p, const std::vector<std::size_t>& s) {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < p.size(); ++y)
    for (auto x : s)
      if (p.leq(x, y)) {
        out.push_back(y);
        break;
      }
  return out;
}

inline std::vector<std::string> closure(const FinitePreorder& p, const std::vector<std::string>& s) {
  std::vector<std::size_t> idx;
  for (const auto& id : s) idx.push_back(p.index_of(id));
  std::vector<std::string> out;
  for (auto y : closure(p, idx)) out.push_back(p.label(y));
  return out;
}

/// True iff `s` (sorted or not) is closed under going down.
template <FiniteOrder P>
bool is_down_closed(const P& p, const std::vector<std::size_t>& s) {
  std::vector<char> in(p.size(), 0);
  for (auto x : s) in[x] = 1;
  for (auto x : s)
    for (auto y : down_set(p, x))
      if (!in[y]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Separation and local finiteness

template <FiniteOrder P>
bool is_t0(const P& p) {
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p.leq(a, b) && p.leq(b, a)) return false;
  return true;
}

/// Finds a pair of distinct topologically indistinguishable points, if any.
template <FiniteOrder P>
std::optional<std::pair<std::size_t, std::size_t>> t0_violation(const P& p) {
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p.leq(a, b) && p.leq(b, a)) return std::pair{a, b};
  return std::nullopt;
}

/// T1 holds iff the specialization order is discrete.
template <FiniteOrder P>
bool is_t1(const P& p) {
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (a != b && p.leq(a, b)) return false;
  return true;
}

template <FiniteOrder P>
bool is_antichain(const P& p) {
  return is_t1(p);
}

/// Every point of a materialized finite space has finite down- and up-sets.
template <FiniteOrder P>
constexpr bool is_strongly_locally_finite(const P&) {
  return true;
}

// ---------------------------------------------------------------------------
// Maps

/// Continuity between Alexandroff spaces is order preservation.
template <FiniteOrder D, FiniteOrder C>
bool is_continuous(const PointMap<D, C>& f) {
  const auto& dom = f.domain();
  const auto& cod = f.codomain();
  for (std::size_t x = 0; x < dom.size(); ++x)
    for (std::size_t y = 0; y < dom.size(); ++y)
      if (dom.leq(x, y) && !cod.leq(f(x), f(y))) return false;
  return true;
}

/// Open iff the image of every minimal open set is open (down-closed).
template <FiniteOrder D, FiniteOrder C>
bool is_open_map(const PointMap<D, C>& f) {
  const auto& dom = f.domain();
  const auto& cod = f.codomain();
  std::vector<std::size_t> image;
  for (std::size_t x = 0; x < dom.size(); ++x) {
    image.clear();
    for (auto y : down_set(dom, x)) image.push_back(f(y));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (!is_down_closed(cod, image)) return false;
  }
  return true;
}

template <FiniteOrder D, FiniteOrder C>
bool is_bijective(const PointMap<D, C>& f) {
  if (f.domain().size() != f.codomain().size()) return false;
  std::vector<char> hit(f.codomain().size(), 0);
  for (auto y : f.assignment()) {
    if (hit[y]) return false;
    hit[y] = 1;
  }
  return true;
}

/// Bijective, with both f and its inverse order preserving.
template <FiniteOrder D, FiniteOrder C>
bool is_homeomorphism(const PointMap<D, C>& f) {
  if (!is_bijective(f)) return false;
  const auto& dom = f.domain();
  const auto& cod = f.codomain();
  for (std::size_t x = 0; x < dom.size(); ++x)
    for (std::size_t y = 0; y < dom.size(); ++y)
      if (dom.leq(x, y) != cod.leq(f(x), f(y))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subspaces and the core

/// The subspace on `keep` (indices into p), in the order given.
template <FiniteOrder P>
FinitePreorder induced_subposet(const P& p, const std::vector<std::size_t>& keep,
                                std::size_t max_pairs = kDefaultMaxRelationPairs) {
  std::vector<std::string> ids;
  ids.reserve(keep.size());
  for (auto k : keep) ids.push_back(p.label(k));
  return FinitePreorder::from_predicate(
      std::move(ids), [&](std::size_t i, std::size_t j) { return p.leq(keep[i], keep[j]); }, max_pairs);
}

/// Copies any finite order into an explicit FinitePreorder.
template <FiniteOrder P>
FinitePreorder materialize(const P& p, std::size_t max_pairs = kDefaultMaxRelationPairs) {
  std::vector<std::size_t> all(p.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return induced_subposet(p, all, max_pairs);
}

namespace detail {
// Among `alive` points strictly below (or above) x, is there a greatest (least) one?
template <FiniteOrder P>
bool is_beat_point(const P& p, const std::vector<char>& alive, std::size_t x, bool downward) {
  std::vector<std::size_t> nbrs;
  for (std::size_t y = 0; y < p.size(); ++y) {
    if (!alive[y] || y == x) continue;
    if (downward ? p.leq(y, x) : p.leq(x, y)) nbrs.push_back(y);
  }
  if (nbrs.empty()) return false;
  for (auto m : nbrs) {
    bool extremal = true;
    for (auto z : nbrs)
      if (downward ? !p.leq(z, m) : !p.leq(m, z)) {
        extremal = false;
        break;
      }
    if (extremal) return true;
  }
  return false;
}
}  // namespace detail

/// Indices of the points kept by iterated beat-point removal. At every step
/// the first beat point in point order is removed.
template <FiniteOrder P>
std::vector<std::size_t> core_points(const P& p) {
  if (auto bad = t0_violation(p))
    throw PreconditionError("core requires a T0 space; '" + std::string(p.label(bad->first)) + "' and '" +
                            std::string(p.label(bad->second)) + "' are indistinguishable");
  std::vector<char> alive(p.size(), 1);
  for (bool removed = true; removed;) {
    removed = false;
    for (std::size_t x = 0; x < p.size() && !removed; ++x) {
      if (!alive[x]) continue;
      if (detail::is_beat_point(p, alive, x, true) || detail::is_beat_point(p, alive, x, false)) {
        alive[x] = 0;
        removed = true;
      }
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (alive[x]) keep.push_back(x);
  return keep;
}

/// Minimal finite model of p (unique up to isomorphism); p is contractible
/// iff the core is a single point.
template <FiniteOrder P>
FinitePreorder core(const P& p) {
  return induced_subposet(p, core_points(p));
}

// ---------------------------------------------------------------------------
// Hasse diagram

/// Strict covering pairs (a, b): a < b with nothing strictly between. For a
/// non-T0 preorder, mutually related pairs are not reported here.
template <FiniteOrder P>
std::vector<std::pair<std::size_t, std::size_t>> covers(const P& p) {
  const std::size_t n = p.size();
  auto lt = [&](std::size_t a, std::size_t b) { return p.leq(a, b) && !p.leq(b, a); };
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!lt(a, b)) continue;
      bool direct = true;
      for (std::size_t c = 0; c < n && direct; ++c)
        if (lt(a, c) && lt(c, b)) direct = false;
      if (direct) out.emplace_back(a, b);
    }
  return out;
}

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}
}  // namespace detail

/// Graphviz rendering of the Hasse diagram, edges drawn from smaller to larger
/// with the bottom of the order at the bottom of the page.
template <FiniteOrder P>
std::string to_dot(const P& p, const std::string& name = "poset") {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < p.size(); ++i) os << "  " << detail::dot_quote(p.label(i)) << ";\n";
  for (auto [a, b] : covers(p))
    os << "  " << detail::dot_quote(p.label(a)) << " -> " << detail::dot_quote(p.label(b)) << ";\n";
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p.leq(a, b) && p.leq(b, a))
        os << "  " << detail::dot_quote(p.label(a)) << " -> " << detail::dot_quote(p.label(b))
           << " [dir=both, style=dashed];\n";
  os << "}\n";
  return os.str();
}

}  // namespace finitetop
