#pragma once

// Inverse systems of the finite stages 2^C, C a finite subset of ℕ, with the
// bonding maps p_{C,C'}(D) = D if D ⊆ C, else C.
//
// The inverse limit over all finite C is infinite; everything here works on a
// finite, union-closed truncation of the index set. At a truncation the
// extension point ⊤ is the thread whose component at C is C itself.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <iomanip>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "finitetop/error.hpp"
#include "finitetop/hyperspace.hpp"
#include "finitetop/poset.hpp"
#include "finitetop/subset.hpp"

namespace finitetop {

/// p_{C,C'}(D) for C ⊆ C' and D ⊆ C'.
inline NatSubset bonding(const NatSubset& c, const NatSubset& c_prime, const NatSubset& d) {
  if (!c.is_subset_of(c_prime))
    throw DomainError("bonding map needs C ⊆ C' (got C=" + c.label() + ", C'=" + c_prime.label() + ")");
  if (!d.is_subset_of(c_prime))
    throw DomainError("bonding map argument " + d.label() + " is not a point of 2^" + c_prime.label());
  return d.is_subset_of(c) ? d : c;
}

/// p_{n,n+1} : 2^{1..n+1} → 2^{1..n} of the countable sequence.
inline NatSubset bonding_seq(std::uint64_t n, const NatSubset& c) {
  if (n == 0) throw DomainError("bonding_seq needs n >= 1");
  if (c.members().front() == 0 || c.max() > n + 1)
    throw DomainError(c.label() + " is not a subset of {1.." + std::to_string(n + 1) + "}");
  return c.contains(n + 1) ? initial_segment(n) : c;
}

inline constexpr std::size_t kMaxIndexSize = 4096;
inline constexpr std::size_t kMaxStageGround = 16;

/// A finite family of finite subsets of ℕ closed under binary union.
class DirectedIndex {
public:
  /// Closes `family` under union. `was_closed()` reports whether anything had to be added.
  static DirectedIndex close(std::vector<NatSubset> family) {
    if (family.empty()) throw DomainError("directed index must be nonempty");
    std::set<NatSubset> all(family.begin(), family.end());
    const std::size_t given = all.size();
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<NatSubset> snapshot(all.begin(), all.end());
      for (std::size_t i = 0; i < snapshot.size(); ++i)
        for (std::size_t j = i + 1; j < snapshot.size(); ++j)
          if (all.insert(snapshot[i].union_with(snapshot[j])).second) {
            grew = true;
            if (all.size() > kMaxIndexSize)
              throw ResourceError("union closure of the index exceeds " + std::to_string(kMaxIndexSize) + " sets");
          }
    }
    DirectedIndex idx;
    idx.elements_.assign(all.begin(), all.end());
    idx.was_closed_ = all.size() == given;
    return idx;
  }

  /// {1} ⊆ {1,2} ⊆ ... ⊆ {1..n}: the truncated countable sequence.
  static DirectedIndex chain(std::uint64_t n) {
    std::vector<NatSubset> f;
    for (std::uint64_t k = 1; k <= n; ++k) f.push_back(initial_segment(k));
    return close(std::move(f));
  }

  /// All nonempty subsets of `top`.
  static DirectedIndex all_subsets(const NatSubset& top) {
    if (top.size() > kMaxStageGround) throw ResourceError("index over too large a set");
    std::vector<NatSubset> f;
    const auto& m = top.members();
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << m.size()); ++s) {
      std::vector<std::uint64_t> v;
      for (auto bits = s; bits; bits &= bits - 1) v.push_back(m[std::countr_zero(bits)]);
      f.emplace_back(std::move(v));
    }
    return close(std::move(f));
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const NatSubset& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<NatSubset>& elements() const noexcept { return elements_; }
  bool was_closed() const noexcept { return was_closed_; }

  std::optional<std::size_t> position(const NatSubset& c) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), c);
    if (it == elements_.end() || *it != c) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  std::optional<std::size_t> maximum() const {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      bool top = true;
      for (const auto& e : elements_)
        if (!e.is_subset_of(elements_[i])) {
          top = false;
          break;
        }
      if (top) return i;
    }
    return std::nullopt;
  }

private:
  DirectedIndex() = default;
  std::vector<NatSubset> elements_;
  bool was_closed_ = true;
};

/// All nonempty subsets of c, in canonical order.
inline std::vector<NatSubset> stage_points(const NatSubset& c) {
  if (c.size() > kMaxStageGround) throw ResourceError("stage 2^C too large to enumerate");
  std::vector<NatSubset> out;
  const auto& m = c.members();
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << m.size()); ++s) {
    std::vector<std::uint64_t> v;
    for (auto bits = s; bits; bits &= bits - 1) v.push_back(m[std::countr_zero(bits)]);
    out.emplace_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The system {2^C, p_{C,C'}} over a directed index.
class InverseSystem {
public:
  explicit InverseSystem(DirectedIndex index) : index_(std::move(index)) {
    for (const auto& c : index_.elements())
      if (c.size() > kMaxStageGround) throw ResourceError("stage 2^" + c.label() + " too large");
  }

  const DirectedIndex& index() const noexcept { return index_; }

  std::vector<NatSubset> stage(std::size_t i) const { return stage_points(index_[i]); }
  std::uint64_t stage_size(std::size_t i) const { return (std::uint64_t{1} << index_[i].size()) - 1; }

  /// The stage as a materialized hyperspace (point order matches `stage(i)`).
  std::shared_ptr<const MaterializedHyperspace> stage_space(std::size_t i) const {
    std::vector<std::string> g;
    for (auto x : index_[i]) g.push_back(std::to_string(x));
    return std::make_shared<const MaterializedHyperspace>(MaterializedHyperspace::build(std::move(g)));
  }

  /// p_{C_i, C_j} as a point map 2^{C_j} → 2^{C_i}.
  PointMap<MaterializedHyperspace> bonding_map(std::size_t i, std::size_t j) const {
    if (!index_[i].is_subset_of(index_[j]))
      throw DomainError("no bonding map: " + index_[i].label() + " ⊄ " + index_[j].label());
    auto from = stage_space(j);
    auto to = stage_space(i);
    const auto pts = stage(j);
    const auto targets = stage(i);
    std::vector<std::size_t> a(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto img = bonding(index_[i], index_[j], pts[k]);
      a[k] = static_cast<std::size_t>(std::lower_bound(targets.begin(), targets.end(), img) - targets.begin());
    }
    return PointMap<MaterializedHyperspace>(from, to, std::move(a));
  }

private:
  DirectedIndex index_;
};

/// A thread of a truncated system: h(D) for a finite D, or h(⊤).
struct Thread {
  std::optional<NatSubset> source;  // empty for ⊤
  std::vector<NatSubset> components;

  bool is_top() const noexcept { return !source.has_value(); }
};

/// (h(D))_C = D if D ⊆ C, else C; (h(⊤))_C = C.
inline Thread thread_of(const ExtendedPoint& x, const DirectedIndex& index) {
  Thread t;
  if (!x.is_top()) t.source = x.subset();
  t.components.reserve(index.size());
  for (const auto& c : index.elements())
    t.components.push_back(!x.is_top() && x.subset().is_subset_of(c) ? x.subset() : c);
  return t;
}

inline Thread thread_of(const NatSubset& d, const DirectedIndex& index) { return thread_of(ExtendedPoint(d), index); }

/// Compatibility of a tuple (one point per index element) with every bonding map.
inline bool is_thread(const std::vector<NatSubset>& tuple, const InverseSystem& sys) {
  const auto& idx = sys.index();
  if (tuple.size() != idx.size()) throw DomainError("tuple length does not match the index");
  for (std::size_t i = 0; i < tuple.size(); ++i)
    if (!tuple[i].is_subset_of(idx[i]))
      throw DomainError("component " + tuple[i].label() + " is not a point of stage 2^" + idx[i].label());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (i != j && idx[i].is_subset_of(idx[j]) && bonding(idx[i], idx[j], tuple[j]) != tuple[i]) return false;
  return true;
}

inline constexpr double kMaxLimitSearchSpace = 1e6;

/// Every compatible tuple, by exhaustive search over the product of stages.
/// Larger stages are assigned first; each partial tuple is pruned as soon as
/// a bonding compatibility fails. Output is sorted.
inline std::vector<std::vector<NatSubset>> enumerate_limit(const InverseSystem& sys) {
  const auto& idx = sys.index();
  double product = 1;
  for (std::size_t i = 0; i < idx.size(); ++i) product *= static_cast<double>(sys.stage_size(i));
  if (product > kMaxLimitSearchSpace)
    throw ResourceError("limit enumeration over a product of " + std::to_string(product) + " tuples exceeds 1e6");

  std::vector<std::size_t> order(idx.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return idx[a].size() > idx[b].size(); });
  std::vector<std::vector<NatSubset>> stages;
  for (std::size_t i = 0; i < idx.size(); ++i) stages.push_back(sys.stage(i));

  std::vector<std::vector<NatSubset>> out;
  std::vector<std::optional<NatSubset>> partial(idx.size());
  auto compatible = [&](std::size_t i) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (j == i || !partial[j]) continue;
      if (idx[i].is_subset_of(idx[j]) && bonding(idx[i], idx[j], *partial[j]) != *partial[i]) return false;
      if (idx[j].is_subset_of(idx[i]) && bonding(idx[j], idx[i], *partial[i]) != *partial[j]) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t depth) -> void {
    if (depth == order.size()) {
      std::vector<NatSubset> t;
      for (auto& c : partial) t.push_back(*c);
      out.push_back(std::move(t));
      return;
    }
    const std::size_t i = order[depth];
    for (const auto& candidate : stages[i]) {
      partial[i] = candidate;
      if (compatible(i)) self(self, depth + 1);
    }
    partial[i].reset();
  };
  search(search, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// The countable sequence {2^{1..n}, p_{n,n+1}}

/// h(D) truncated at n: ({1}, {1,2}, ..., {1..m(D)-1}, D, D, ...).
inline std::vector<NatSubset> sequence_thread(const NatSubset& d, std::uint64_t n) {
  std::vector<NatSubset> t;
  for (std::uint64_t k = 1; k <= n; ++k) t.push_back(k < d.max() ? initial_segment(k) : d);
  return t;
}

/// h(ℕ) truncated at n: ({1}, {1,2}, ..., {1..n}).
inline std::vector<NatSubset> sequence_top_thread(std::uint64_t n) {
  std::vector<NatSubset> t;
  for (std::uint64_t k = 1; k <= n; ++k) t.push_back(initial_segment(k));
  return t;
}

struct HBijectionReport {
  std::uint64_t n = 0;
  bool well_defined = false;      // (a) every h(D), m(D) <= n, is a thread
  bool injective = false;         // (b)
  bool top_prefix = false;        // (c) h(ℕ) = ({1}, ..., {1..n})
  bool order_preserving = false;  // (d) D ⊆ E ⇒ h(D) ⊆ h(E) componentwise
  std::vector<NatSubset> top_thread;

  bool all_pass() const { return well_defined && injective && top_prefix && order_preserving; }
};

inline constexpr std::uint64_t kMaxVerifyN = 12;

/// Finite-stage checks of the homeomorphism h : 2^ℕ_f ∪ {ℕ} → lim 2^{1..n}.
///
/// Injectivity is checked among the finite D with m(D) <= n; ⊤ is checked to
/// differ from every h(D) with m(D) < n (at the truncation it coincides with
/// h({1..n})).
inline HBijectionReport verify_h_bijection(std::uint64_t n) {
  if (n == 0) throw DomainError("verify_h_bijection needs n >= 1");
  if (n > kMaxVerifyN) throw ResourceError("verify_h_bijection is limited to n <= " + std::to_string(kMaxVerifyN));
  HBijectionReport r;
  r.n = n;
  const InverseSystem sys(DirectedIndex::chain(n));
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;

  auto to_subset = [](std::uint64_t m) {
    std::vector<std::uint64_t> v;
    for (; m; m &= m - 1) v.push_back(static_cast<std::uint64_t>(std::countr_zero(m)) + 1);
    return NatSubset(std::move(v));
  };
  auto to_mask = [](const NatSubset& s) {
    std::uint64_t m = 0;
    for (auto x : s) m |= std::uint64_t{1} << (x - 1);
    return m;
  };

  // thread masks, one row of n components per D
  std::vector<std::vector<std::uint64_t>> h(full + 1);
  r.well_defined = true;
  for (std::uint64_t dm = 1; dm <= full; ++dm) {
    const NatSubset d = to_subset(dm);
    const auto t = sequence_thread(d, n);
    if (!is_thread(t, sys) || t != thread_of(d, sys.index()).components) r.well_defined = false;
    for (const auto& c : t) h[dm].push_back(to_mask(c));
  }

  std::set<std::vector<std::uint64_t>> seen;
  r.injective = true;
  for (std::uint64_t dm = 1; dm <= full; ++dm)
    if (!seen.insert(h[dm]).second) r.injective = false;
  r.top_thread = thread_of(ExtendedPoint::top(), sys.index()).components;
  std::vector<std::uint64_t> top_masks;
  for (const auto& c : r.top_thread) top_masks.push_back(to_mask(c));
  for (std::uint64_t dm = 1; dm <= full; ++dm)
    if (static_cast<std::uint64_t>(std::bit_width(dm)) < n && h[dm] == top_masks) r.injective = false;

  r.top_prefix = r.top_thread == sequence_top_thread(n) && is_thread(r.top_thread, sys);

  r.order_preserving = true;
  for (std::uint64_t em = 1; em <= full && r.order_preserving; ++em)
    for (std::uint64_t dm = em; dm; dm = (dm - 1) & em)
      for (std::uint64_t k = 0; k < n; ++k)
        if ((h[dm][k] & ~h[em][k]) != 0) {
          r.order_preserving = false;
          break;
        }
  return r;
}

inline constexpr std::uint64_t kMaxOpennessN = 5;

/// For every D ⊆ {1..n}, compares h(2^D) with the basic box of the limit that
/// constrains the component at stage min(m(D)+1, n) to 2^D.
inline bool openness_certificate(std::uint64_t n) {
  if (n == 0) throw DomainError("openness certificate needs n >= 1");
  if (n > kMaxOpennessN) throw ResourceError("openness certificate is limited to n <= " + std::to_string(kMaxOpennessN));
  const InverseSystem sys(DirectedIndex::chain(n));
  const auto limit = enumerate_limit(sys);
  for (const auto& d : stage_points(initial_segment(n))) {
    std::set<std::vector<NatSubset>> image;
    for (const auto& e : stage_points(d)) image.insert(sequence_thread(e, n));
    const std::size_t pos = static_cast<std::size_t>(std::min<std::uint64_t>(d.max() + 1, n)) - 1;
    std::set<std::vector<NatSubset>> box;
    for (const auto& t : limit)
      if (t[pos].is_subset_of(d)) box.insert(t);
    if (image != box) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rendering of the unrolled sequence

/// Aligned text table: one column per stage 2^{1..k}, one row per point D
/// (binary-counting order) showing D from stage m(D) on, then the ⊤ row.
inline std::string unrolling_table(std::uint64_t n) {
  if (n == 0 || n > kMaxOpennessN) throw DomainError("unrolling table supports 1 <= n <= 5");
  std::vector<std::string> header;
  for (std::uint64_t k = 1; k <= n; ++k) header.push_back("2^" + initial_segment(k).label());
  std::vector<std::vector<std::string>> rows;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t dm = 1; dm <= full; ++dm) {
    std::vector<std::uint64_t> v;
    for (auto m = dm; m; m &= m - 1) v.push_back(static_cast<std::uint64_t>(std::countr_zero(m)) + 1);
    const NatSubset d(v);
    std::vector<std::string> row;
    for (std::uint64_t k = 1; k <= n; ++k) row.push_back(k < d.max() ? "" : d.label());
    rows.push_back(std::move(row));
  }
  std::vector<std::string> top_row;
  for (const auto& c : sequence_top_thread(n)) top_row.push_back(c.label());
  rows.push_back(std::move(top_row));

  std::vector<std::size_t> width(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    width[k] = header[k].size();
    for (const auto& r : rows) width[k] = std::max(width[k], r[k].size());
  }
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& cells, const std::string& tail) {
    std::string line;
    for (std::size_t k = 0; k < n; ++k) {
      std::string cell = cells[k];
      cell.resize(width[k], ' ');
      line += cell;
      if (k + 1 < n) line += "   ";
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << tail << '\n';
  };
  emit(header, "");
  for (std::size_t r = 0; r + 1 < rows.size(); ++r) emit(rows[r], "");
  emit(rows.back(), "   <- h(N)");
  return os.str();
}

/// Graphviz rendering: one node per (stage, point), edges along p_{k,k+1}.
inline std::string unrolling_dot(std::uint64_t n) {
  if (n == 0 || n > kMaxOpennessN) throw DomainError("unrolling DOT supports 1 <= n <= 5");
  std::ostringstream os;
  os << "digraph inverse_sequence {\n  rankdir=RL;\n";
  auto node = [](std::uint64_t k, const NatSubset& c) { return "\"" + std::to_string(k) + ":" + c.label() + "\""; };
  for (std::uint64_t k = 1; k <= n; ++k) {
    os << "  subgraph cluster_" << k << " {\n    label=\"2^" << initial_segment(k).label() << "\";\n";
    for (const auto& c : stage_points(initial_segment(k)))
      os << "    " << node(k, c) << " [label=\"" << c.label() << "\"];\n";
    os << "  }\n";
  }
  for (std::uint64_t k = 1; k < n; ++k)
    for (const auto& c : stage_points(initial_segment(k + 1)))
      os << "  " << node(k + 1, c) << " -> " << node(k, bonding_seq(k, c)) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace finitetop
