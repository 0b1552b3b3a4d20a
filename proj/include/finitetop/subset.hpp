#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "finitetop/error.hpp"

namespace finitetop {

/// Orders opaque string ids so that embedded digit runs compare numerically
/// ("2" < "10", "p9" < "p10"). Ties fall back to plain lexicographic order.
struct NaturalLess {
  bool operator()(std::string_view a, std::string_view b) const {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
      const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
      if (da && db) {
        std::size_t ie = i, je = j;
        while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
        while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
        std::string_view ra = a.substr(i, ie - i), rb = b.substr(j, je - j);
        while (ra.size() > 1 && ra.front() == '0') ra.remove_prefix(1);
        while (rb.size() > 1 && rb.front() == '0') rb.remove_prefix(1);
        if (ra.size() != rb.size()) return ra.size() < rb.size();
        if (ra != rb) return ra < rb;
        i = ie;
        j = je;
      } else {
        if (a[i] != b[j]) return a[i] < b[j];
        ++i;
        ++j;
      }
    }
    if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
    return a < b;
  }
};

namespace detail {
template <class Id>
struct IdLess {
  bool operator()(const Id& a, const Id& b) const { return a < b; }
};
template <>
struct IdLess<std::string> {
  bool operator()(const std::string& a, const std::string& b) const { return NaturalLess{}(a, b); }
};

inline void append_id(std::ostringstream& os, const std::string& id) { os << id; }
inline void append_id(std::ostringstream& os, std::uint64_t id) { os << id; }
}  // namespace detail

/// A nonempty finite subset of a ground set, kept sorted and duplicate free.
///
/// `Id` is the ground element type: `std::string` for opaque ids, or an
/// unsigned integer for subsets of the naturals.
template <class Id>
class FiniteSubset {
public:
  using value_type = Id;
  using less = detail::IdLess<Id>;

  FiniteSubset() = delete;

  explicit FiniteSubset(std::vector<Id> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end(), less{});
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.empty()) throw DomainError("finite subset must be nonempty");
  }

  FiniteSubset(std::initializer_list<Id> members) : FiniteSubset(std::vector<Id>(members)) {}

  const std::vector<Id>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  const Id& max() const noexcept { return members_.back(); }

  bool contains(const Id& x) const {
    return std::binary_search(members_.begin(), members_.end(), x, less{});
  }

  bool is_subset_of(const FiniteSubset& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                         members_.end(), less{});
  }

  FiniteSubset union_with(const FiniteSubset& other) const {
    std::vector<Id> out;
    out.reserve(members_.size() + other.members_.size());
    std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                   std::back_inserter(out), less{});
    return FiniteSubset(std::move(out));
  }

  /// Canonical point order: by cardinality, then lexicographically by members.
  friend bool operator<(const FiniteSubset& a, const FiniteSubset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.members_.begin(), a.members_.end(), b.members_.begin(),
                                        b.members_.end(), less{});
  }
  friend bool operator==(const FiniteSubset& a, const FiniteSubset& b) {
    return a.members_ == b.members_;
  }
  friend bool operator!=(const FiniteSubset& a, const FiniteSubset& b) { return !(a == b); }

  std::string label() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i) os << ',';
      detail::append_id(os, members_[i]);
    }
    os << '}';
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const FiniteSubset& s) { return os << s.label(); }

private:
  std::vector<Id> members_;
};

using Subset = FiniteSubset<std::string>;
using NatSubset = FiniteSubset<std::uint64_t>;

/// {1, ..., n}
inline NatSubset initial_segment(std::uint64_t n) {
  if (n == 0) throw DomainError("initial segment {1..n} needs n >= 1");
  std::vector<std::uint64_t> v(n);
  for (std::uint64_t i = 0; i < n; ++i) v[i] = i + 1;
  return NatSubset(std::move(v));
}

/// Label for a set of ids given by position into `ids` (positions must be sorted).
template <class Positions>
std::string subset_label(const std::vector<std::string>& ids, const Positions& positions) {
  std::string out = "{";
  bool first = true;
  for (auto p : positions) {
    if (!first) out += ',';
    out += ids[static_cast<std::size_t>(p)];
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace finitetop
