#pragma once

// Integer simplicial homology through the Smith normal form of the boundary
// matrices, plus ranks of maps induced on rational homology.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "finitetop/error.hpp"
#include "finitetop/limits.hpp"
#include "finitetop/simcomplex.hpp"

namespace finitetop {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer matrix stored by columns; each column lists (row, value) with rows increasing.
struct SparseIntMatrix {
  using Entry = std::pair<std::uint32_t, std::int64_t>;

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Entry>> columns;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

  static SparseIntMatrix from_dense(const std::vector<std::vector<std::int64_t>>& a) {
    SparseIntMatrix m(a.size(), a.empty() ? 0 : a.front().size());
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (a[i].size() != m.cols) throw DomainError("matrix rows must have equal length");
      for (std::size_t j = 0; j < m.cols; ++j)
        if (a[i][j] != 0) m.columns[j].emplace_back(static_cast<std::uint32_t>(i), a[i][j]);
    }
    return m;
  }

  std::vector<std::vector<std::int64_t>> to_dense() const {
    std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols, 0));
    for (std::size_t j = 0; j < cols; ++j)
      for (auto [i, v] : columns[j]) a[i][j] = v;
    return a;
  }

  std::int64_t at(std::size_t i, std::size_t j) const {
    for (auto [r, v] : columns[j])
      if (r == i) return v;
    return 0;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
  }
};

/// Rank and invariant factors d_1 | d_2 | … | d_r (all positive).
struct SmithResult {
  std::size_t rank = 0;
  std::vector<BigInt> factors;
};

namespace detail {

struct Overflow {};

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
  return -a;
}
inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt neg(const BigInt& a) { return -a; }

template <class Int>
Int abs_of(const Int& a) {
  return a < 0 ? neg(a) : a;
}

template <class Int>
using SparseRow = std::vector<std::pair<std::uint32_t, Int>>;

// row_a + k * row_b, both sorted by column; zero results are dropped.
template <class Int>
SparseRow<Int> axpy(const SparseRow<Int>& a, const Int& k, const SparseRow<Int>& b) {
  SparseRow<Int> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, mul(k, b[j].second));
      ++j;
    } else {
      Int v = add(a[i].second, mul(k, b[j].second));
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class Int>
const Int* find_entry(const SparseRow<Int>& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::uint32_t c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

template <class Int>
SmithResult smith_impl(const SparseIntMatrix& m) {
  // rows with their entries; cols_of lists rows that may hold an entry in a column
  std::vector<SparseRow<Int>> rows(m.rows);
  std::vector<std::vector<std::uint32_t>> cols_of(m.cols);
  for (std::uint32_t j = 0; j < m.cols; ++j)
    for (auto [i, v] : m.columns[j]) {
      if (v == 0) continue;
      rows[i].emplace_back(j, Int(v));
      cols_of[j].push_back(i);
    }
  std::vector<char> alive(m.rows, 1);
  std::vector<std::uint32_t> stamp(m.rows, 0);
  std::uint32_t tick = 0;
  std::size_t units = 0;

  // Phase 1: eliminate along ±1 pivots, choosing the shortest pivot row per column.
  for (std::uint32_t c = 0; c < m.cols; ++c) {
    ++tick;
    std::vector<std::uint32_t> holders;
    for (auto r : cols_of[c]) {
      if (!alive[r] || stamp[r] == tick) continue;
      stamp[r] = tick;
      if (find_entry(rows[r], c)) holders.push_back(r);
    }
    cols_of[c].clear();
    std::optional<std::uint32_t> pivot;
    for (auto r : holders) {
      const Int& v = *find_entry(rows[r], c);
      if ((v == 1 || v == -1) && (!pivot || rows[r].size() < rows[*pivot].size())) pivot = r;
    }
    if (!pivot) {
      cols_of[c] = std::move(holders);
      continue;
    }
    const Int p = *find_entry(rows[*pivot], c);
    for (auto r : holders) {
      if (r == *pivot) continue;
      const Int k = neg(mul(*find_entry(rows[r], c), p));
      rows[r] = axpy(rows[r], k, rows[*pivot]);
      for (const auto& e : rows[r])
        if (e.first > c) cols_of[e.first].push_back(r);
    }
    alive[*pivot] = 0;
    rows[*pivot].clear();
    ++units;
  }

  // Phase 2: dense Smith reduction of whatever is left.
  std::vector<std::uint32_t> rest_rows;
  std::unordered_map<std::uint32_t, std::size_t> rest_cols;
  for (std::uint32_t r = 0; r < m.rows; ++r) {
    if (!alive[r] || rows[r].empty()) continue;
    rest_rows.push_back(r);
    for (const auto& e : rows[r]) rest_cols.emplace(e.first, 0);
  }
  std::vector<std::uint32_t> col_order;
  for (const auto& [c, unused] : rest_cols) col_order.push_back(c);
  std::sort(col_order.begin(), col_order.end());
  for (std::size_t k = 0; k < col_order.size(); ++k) rest_cols[col_order[k]] = k;
  const std::size_t R = rest_rows.size(), C = col_order.size();
  if (R * C > 50'000'000) throw ResourceError("Smith normal form residual block is too large");
  std::vector<std::vector<Int>> a(R, std::vector<Int>(C, Int(0)));
  for (std::size_t i = 0; i < R; ++i)
    for (const auto& e : rows[rest_rows[i]]) a[i][rest_cols[e.first]] = e.second;

  std::vector<Int> diag;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (a[i][j] != 0 && (!best || abs_of(a[i][j]) < abs_of(a[best->first][best->second]))) best = {i, j};
    if (!best) break;
    std::swap(a[t], a[best->first]);
    for (auto& row : a) std::swap(row[t], row[best->second]);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a[i][t] == 0) continue;
        const Int q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < C; ++j) a[i][j] = add(a[i][j], neg(mul(q, a[t][j])));
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a[t][j] == 0) continue;
        const Int q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < R; ++i) a[i][j] = add(a[i][j], neg(mul(q, a[i][t])));
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
      // move the smallest remainder of row t / column t onto the pivot
      std::size_t bi = t, bj = t;
      for (std::size_t i = t + 1; i < R; ++i)
        if (a[i][t] != 0 && abs_of(a[i][t]) < abs_of(a[bi][bj])) bi = i, bj = t;
      for (std::size_t j = t + 1; j < C; ++j)
        if (a[t][j] != 0 && abs_of(a[t][j]) < abs_of(a[bi][bj])) bi = t, bj = j;
      if (bi != t) std::swap(a[t], a[bi]);
      if (bj != t)
        for (auto& row : a) std::swap(row[t], row[bj]);
    }
    diag.push_back(abs_of(a[t][t]));
  }

  std::vector<BigInt> d;
  for (const auto& v : diag) d.emplace_back(v);
  std::sort(d.begin(), d.end());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const BigInt g = boost::multiprecision::gcd(d[i], d[j]);
      const BigInt l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  SmithResult out;
  out.rank = units + d.size();
  out.factors.assign(units, BigInt(1));
  out.factors.insert(out.factors.end(), d.begin(), d.end());
  return out;
}

}  // namespace detail

/// Smith normal form over the integers. Runs in 64-bit arithmetic and repeats
/// the computation with arbitrary precision if an intermediate overflows.
inline SmithResult smith_normal_form(const SparseIntMatrix& m) {
  try {
    return detail::smith_impl<std::int64_t>(m);
  } catch (const detail::Overflow&) {
    return detail::smith_impl<BigInt>(m);
  }
}

inline SmithResult smith_normal_form_bigint(const SparseIntMatrix& m) { return detail::smith_impl<BigInt>(m); }

// ---------------------------------------------------------------------------
// Chain complexes

/// Simplices by dimension in canonical order, and boundary matrices
/// ∂_q : C_q → C_{q−1} for q ≥ 1 (boundary[0] is the zero map on C_0).
struct ChainComplexData {
  std::vector<std::vector<Simplex>> simplices;
  std::vector<SparseIntMatrix> boundary;

  int top_dimension() const { return static_cast<int>(simplices.size()) - 1; }
  std::size_t count(int q) const {
    return q < 0 || q > top_dimension() ? 0 : simplices[static_cast<std::size_t>(q)].size();
  }

  /// ∂_q ∘ ∂_{q+1} = 0 for all q.
  bool boundary_squared_zero() const {
    for (std::size_t q = 1; q + 1 < boundary.size(); ++q) {
      const auto& lo = boundary[q];
      const auto& hi = boundary[q + 1];
      for (const auto& col : hi.columns) {
        std::unordered_map<std::uint32_t, std::int64_t> acc;
        for (auto [mid, v] : col)
          for (auto [low, w] : lo.columns[mid]) acc[low] += v * w;
        for (const auto& [r, v] : acc)
          if (v != 0) return false;
      }
    }
    return true;
  }
};

inline ChainComplexData chain_complex(const AbstractComplex& k) {
  const auto all = k.simplices();
  if (all.size() > max_chain_simplices())
    throw ResourceError("chain complex: " + std::to_string(all.size()) + " simplices exceeds the guard of " +
                        std::to_string(max_chain_simplices()));
  ChainComplexData c;
  const int d = k.dimension();
  if (d < 0) return c;
  c.simplices.resize(static_cast<std::size_t>(d) + 1);
  for (const auto& s : all) c.simplices[s.size() - 1].push_back(s);
  std::vector<std::unordered_map<Simplex, std::uint32_t, SimplexHash>> index(c.simplices.size());
  for (std::size_t q = 0; q < c.simplices.size(); ++q)
    for (std::uint32_t i = 0; i < c.simplices[q].size(); ++i) index[q].emplace(c.simplices[q][i], i);
  c.boundary.emplace_back(0, c.simplices[0].size());
  for (std::size_t q = 1; q < c.simplices.size(); ++q) {
    SparseIntMatrix m(c.simplices[q - 1].size(), c.simplices[q].size());
    for (std::size_t j = 0; j < c.simplices[q].size(); ++j) {
      const auto& s = c.simplices[q][j];
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        m.columns[j].emplace_back(index[q - 1].at(f), i % 2 == 0 ? 1 : -1);
      }
      std::sort(m.columns[j].begin(), m.columns[j].end());
    }
    c.boundary.push_back(std::move(m));
  }
  return c;
}

/// Unreduced integral homology: Betti numbers and torsion invariant factors per dimension.
struct HomologyResult {
  std::vector<std::size_t> betti;
  std::vector<std::vector<BigInt>> torsion;

  bool operator==(const HomologyResult&) const = default;
};

struct HomologyOptions {
  /// Run the per-dimension Smith normal forms on separate threads.
  bool parallel = false;
};

inline HomologyResult homology(const ChainComplexData& c, HomologyOptions opts = {}) {
  HomologyResult h;
  const std::size_t n = c.simplices.size();
  if (n == 0) return h;
  // snf[q] is the Smith form of ∂_q; ∂_0 is zero
  std::vector<SmithResult> snf(n + 1);
  if (opts.parallel) {
    std::vector<std::future<SmithResult>> jobs;
    for (std::size_t q = 1; q < n; ++q)
      jobs.push_back(std::async(std::launch::async, [&c, q] { return smith_normal_form(c.boundary[q]); }));
    for (std::size_t q = 1; q < n; ++q) snf[q] = jobs[q - 1].get();
  } else {
    for (std::size_t q = 1; q < n; ++q) snf[q] = smith_normal_form(c.boundary[q]);
  }
  h.betti.resize(n);
  h.torsion.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    h.betti[q] = c.simplices[q].size() - snf[q].rank - snf[q + 1].rank;
    for (const auto& f : snf[q + 1].factors)
      if (f > 1) h.torsion[q].push_back(f);
  }
  return h;
}

inline HomologyResult homology(const AbstractComplex& k, HomologyOptions opts = {}) {
  return homology(chain_complex(k), opts);
}

/// Betti number in dimension q, zero above the top dimension.
inline std::size_t betti(const HomologyResult& h, std::size_t q) { return q < h.betti.size() ? h.betti[q] : 0; }

// ---------------------------------------------------------------------------
// Rational linear algebra for induced maps

/// Integer basis of the rational kernel of m, one sparse column per vector.
inline std::vector<std::vector<std::pair<std::uint32_t, BigInt>>> rational_kernel(const SparseIntMatrix& m) {
  using Row = std::vector<std::pair<std::uint32_t, Rational>>;
  std::vector<Row> rows(m.rows);
  for (std::uint32_t j = 0; j < m.cols; ++j)
    for (auto [i, v] : m.columns[j])
      if (v != 0) rows[i].emplace_back(j, Rational(v));
  auto scaled_sub = [](const Row& a, const Rational& k, const Row& b) {
    Row out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, -k * b[j].second);
        ++j;
      } else {
        Rational v = a[i].second - k * b[j].second;
        if (v != 0) out.emplace_back(a[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  };
  // reduced row echelon form; pivot_row[c] is the row whose leading column is c
  std::vector<std::optional<std::size_t>> pivot_row(m.cols);
  std::vector<char> used(m.rows, 0);
  for (std::uint32_t c = 0; c < m.cols; ++c) {
    std::optional<std::size_t> p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || rows[r].empty() || rows[r].front().first != c) continue;
      if (!p || rows[r].size() < rows[*p].size()) p = r;
    }
    if (!p) continue;
    const Rational lead = rows[*p].front().second;
    for (auto& e : rows[*p]) e.second /= lead;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == *p) continue;
      auto it = std::lower_bound(rows[r].begin(), rows[r].end(), c,
                                 [](const auto& e, std::uint32_t col) { return e.first < col; });
      if (it == rows[r].end() || it->first != c) continue;
      const Rational k = it->second;
      rows[r] = scaled_sub(rows[r], k, rows[*p]);
    }
    used[*p] = 1;
    pivot_row[c] = *p;
  }
  std::vector<std::vector<std::pair<std::uint32_t, BigInt>>> basis;
  for (std::uint32_t f = 0; f < m.cols; ++f) {
    if (pivot_row[f]) continue;
    std::vector<std::pair<std::uint32_t, Rational>> v{{f, Rational(1)}};
    for (std::uint32_t c = 0; c < m.cols; ++c) {
      if (!pivot_row[c]) continue;
      const auto& row = rows[*pivot_row[c]];
      auto it = std::lower_bound(row.begin(), row.end(), f, [](const auto& e, std::uint32_t col) { return e.first < col; });
      if (it != row.end() && it->first == f) v.emplace_back(c, -it->second);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    BigInt scale = 1;
    for (const auto& [c, x] : v) scale = boost::multiprecision::lcm(scale, denominator(x));
    std::vector<std::pair<std::uint32_t, BigInt>> iv;
    for (const auto& [c, x] : v) iv.emplace_back(c, numerator(x) * (scale / denominator(x)));
    basis.push_back(std::move(iv));
  }
  return basis;
}

/// Chain map C_q(K) → C_q(L) of a simplicial map: degenerate images go to 0,
/// others carry the sign of the permutation that sorts the image vertices.
inline SparseIntMatrix induced_chain_map(const SimplicialMap& f, const ChainComplexData& src,
                                         const ChainComplexData& dst, int q) {
  SparseIntMatrix m(dst.count(q), src.count(q));
  if (src.count(q) == 0) return m;
  std::unordered_map<Simplex, std::uint32_t, SimplexHash> index;
  for (std::uint32_t i = 0; i < dst.count(q); ++i) index.emplace(dst.simplices[static_cast<std::size_t>(q)][i], i);
  for (std::size_t j = 0; j < src.count(q); ++j) {
    Simplex img;
    for (auto v : src.simplices[static_cast<std::size_t>(q)][j]) img.push_back(f(v));
    // insertion sort counting transpositions
    int sign = 1;
    bool degenerate = false;
    for (std::size_t a = 1; a < img.size(); ++a)
      for (std::size_t b = a; b > 0 && img[b - 1] >= img[b]; --b) {
        if (img[b - 1] == img[b]) {
          degenerate = true;
          break;
        }
        std::swap(img[b - 1], img[b]);
        sign = -sign;
      }
    if (degenerate) continue;
    auto it = index.find(img);
    if (it == index.end()) throw DomainError("image of a simplex is not a simplex of the codomain");
    m.columns[j].emplace_back(it->second, sign);
  }
  return m;
}

/// Rank over the rationals of H_q(f) : H_q(K) → H_q(L).
inline std::size_t induced_homology_rank(const SimplicialMap& f, int q) {
  if (q < 0) throw DomainError("homology dimension must be nonnegative");
  const auto src = chain_complex(f.domain());
  const auto dst = chain_complex(f.codomain());
  if (src.count(q) == 0 || dst.count(q) == 0) return 0;
  const auto fq = induced_chain_map(f, src, dst, q);
  std::vector<std::vector<std::pair<std::uint32_t, BigInt>>> cycles;
  if (q == 0) {
    for (std::uint32_t i = 0; i < src.count(0); ++i) cycles.push_back({{i, BigInt(1)}});
  } else {
    cycles = rational_kernel(src.boundary[static_cast<std::size_t>(q)]);
  }
  const auto qs = static_cast<std::size_t>(q);
  const SparseIntMatrix empty_bd(dst.count(q), 0);
  const SparseIntMatrix& bd = qs + 1 < dst.boundary.size() ? dst.boundary[qs + 1] : empty_bd;
  SparseIntMatrix joined = bd;
  for (const auto& z : cycles) {
    // f#(z) = Σ z_j f#(e_j)
    std::unordered_map<std::uint32_t, BigInt> acc;
    for (const auto& [j, zj] : z)
      for (auto [i, v] : fq.columns[j]) acc[i] += zj * v;
    std::vector<SparseIntMatrix::Entry> col;
    for (const auto& [i, v] : acc) {
      if (v == 0) continue;
      if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw ResourceError("cycle coefficient exceeds 64 bits");
      col.emplace_back(i, static_cast<std::int64_t>(v));
    }
    std::sort(col.begin(), col.end());
    joined.columns.push_back(std::move(col));
    ++joined.cols;
  }
  return smith_normal_form(joined).rank - smith_normal_form(bd).rank;
}

}  // namespace finitetop
