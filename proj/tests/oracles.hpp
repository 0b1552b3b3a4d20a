#pragma once

// Brute-force reference implementations used by the tests. None of these
// call into the library's algorithms; they work on plain matrices and bitmasks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Relation = std::vector<std::vector<bool>>;  // rel[a][b] == (a <= b)

inline Relation reflexive_transitive_closure(Relation r) {
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

/// Open sets of the Alexandroff topology (down-closed subsets), as bitmasks.
inline std::vector<std::uint32_t> open_sets(const Relation& r) {
  const std::size_t n = r.size();
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    bool open = true;
    for (std::size_t y = 0; y < n && open; ++y)
      if (m >> y & 1)
        for (std::size_t x = 0; x < n; ++x)
          if (r[x][y] && !(m >> x & 1)) open = false;
    if (open) out.push_back(m);
  }
  return out;
}

/// Specialization preorder read back from a topology: x <= y iff every open containing y contains x.
inline Relation specialization(const std::vector<std::uint32_t>& opens, std::size_t n) {
  Relation r(n, std::vector<bool>(n, true));
  for (auto u : opens)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if ((u >> y & 1) && !(u >> x & 1)) r[x][y] = false;
  return r;
}

/// Continuity through preimages of opens.
inline bool continuous_by_opens(const std::vector<std::size_t>& f, const Relation& dom, const Relation& cod) {
  const auto dom_opens = open_sets(dom);
  const std::set<std::uint32_t> dom_set(dom_opens.begin(), dom_opens.end());
  for (auto u : open_sets(cod)) {
    std::uint32_t pre = 0;
    for (std::size_t x = 0; x < f.size(); ++x)
      if (u >> f[x] & 1) pre |= 1u << x;
    if (!dom_set.count(pre)) return false;
  }
  return true;
}

/// Number of order automorphisms, by backtracking over point bijections.
inline std::uint64_t automorphism_count(const Relation& r) {
  const std::size_t n = r.size();
  std::vector<std::size_t> down(n, 0), up(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      down[b] += r[a][b];
      up[a] += r[a][b];
    }
  std::vector<std::size_t> img(n);
  std::vector<bool> used(n, false);
  std::uint64_t count = 0;
  auto go = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      ++count;
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || down[c] != down[i] || up[c] != up[i]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (r[j][i] != r[img[j]][c] || r[i][j] != r[c][img[j]]) ok = false;
      if (!ok) continue;
      used[c] = true;
      img[i] = c;
      self(self, i + 1);
      used[c] = false;
    }
  };
  go(go, 0);
  return count;
}

/// The subset lattice minus ∅ on n points, points indexed by mask - 1.
inline Relation subset_order(std::size_t n) {
  const std::size_t pts = (std::size_t{1} << n) - 1;
  Relation r(pts, std::vector<bool>(pts, false));
  for (std::size_t a = 1; a <= pts; ++a)
    for (std::size_t b = 1; b <= pts; ++b) r[a - 1][b - 1] = (a & b) == a;
  return r;
}

/// All nonempty chains (as sorted index lists) of a partial order.
inline std::vector<std::vector<std::uint32_t>> chains(const Relation& r) {
  const std::size_t n = r.size();
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  auto go = [&](auto&& self, std::uint32_t from) -> void {
    for (std::uint32_t x = from; x < n; ++x) {
      bool ok = true;
      for (auto y : cur)
        if (!r[x][y] && !r[y][x]) ok = false;
      if (!ok) continue;
      cur.push_back(x);
      out.push_back(cur);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  go(go, 0);
  return out;
}

/// Mask-level simplices of a complex given by maximal faces (vertex count ≤ 20).
inline std::set<std::uint32_t> simplex_masks(const std::vector<std::vector<std::uint32_t>>& maximal) {
  std::set<std::uint32_t> out;
  for (const auto& f : maximal) {
    std::uint32_t m = 0;
    for (auto v : f) m |= 1u << v;
    for (std::uint32_t s = m; s; s = (s - 1) & m) out.insert(s);
  }
  return out;
}

/// Point sets of diameter < eps.
inline std::set<std::uint32_t> rips_masks(const std::vector<std::vector<double>>& d, double eps) {
  const std::size_t n = d.size();
  std::set<std::uint32_t> out;
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((m >> i & 1) && (m >> j & 1) && !(d[i][j] < eps)) ok = false;
    if (ok) out.insert(m);
  }
  return out;
}

/// Rank modulo a large prime, by dense elimination.
inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> a) {
  constexpr std::int64_t p = 1'000'000'007;
  auto inv = [&](std::int64_t x) {
    std::int64_t r = 1, e = p - 2;
    x %= p;
    while (e) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (auto& row : a)
    for (auto& v : row) v = ((v % p) + p) % p;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const std::int64_t iv = inv(a[rank][c]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const std::int64_t k = a[i][c] * iv % p;
      for (std::size_t j = c; j < cols; ++j) a[i][j] = ((a[i][j] - k * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

/// Betti numbers over Z/p from simplex bitmasks (no shared code with the library).
inline std::vector<std::size_t> betti_mod_p(const std::set<std::uint32_t>& simplices) {
  std::map<int, std::vector<std::uint32_t>> by_dim;
  for (auto s : simplices) by_dim[std::popcount(s) - 1].push_back(s);
  if (by_dim.empty()) return {};
  const int top = by_dim.rbegin()->first;
  std::vector<std::size_t> rank(static_cast<std::size_t>(top) + 2, 0);
  for (int q = 1; q <= top; ++q) {
    const auto& lo = by_dim[q - 1];
    const auto& hi = by_dim[q];
    std::map<std::uint32_t, std::size_t> pos;
    for (std::size_t i = 0; i < lo.size(); ++i) pos[lo[i]] = i;
    std::vector<std::vector<std::int64_t>> m(lo.size(), std::vector<std::int64_t>(hi.size(), 0));
    for (std::size_t j = 0; j < hi.size(); ++j) {
      int sign = 1;
      for (std::uint32_t v = 0; v < 32; ++v)
        if (hi[j] >> v & 1) {
          m[pos.at(hi[j] & ~(1u << v))][j] = sign;
          sign = -sign;
        }
    }
    rank[static_cast<std::size_t>(q)] = rank_mod_p(m);
  }
  std::vector<std::size_t> betti;
  for (int q = 0; q <= top; ++q)
    betti.push_back(by_dim[q].size() - rank[static_cast<std::size_t>(q)] - rank[static_cast<std::size_t>(q) + 1]);
  return betti;
}

/// Complex isomorphism by trying every vertex permutation (n ≤ 8).
inline bool isomorphic_brute(std::size_t n1, const std::set<std::uint32_t>& a, std::size_t n2,
                             const std::set<std::uint32_t>& b) {
  if (n1 != n2 || a.size() != b.size()) return false;
  std::vector<std::uint32_t> perm(n1);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (auto s : a) {
      std::uint32_t t = 0;
      for (std::uint32_t v = 0; v < n1; ++v)
        if (s >> v & 1) t |= 1u << perm[v];
      if (!b.count(t)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// ---------------------------------------------------------------------------
// Generators (fixed seeds at call sites)

/// Random partial order: random forward edges on 0..n-1, then closure.
inline Relation random_poset(std::size_t n, double p, std::mt19937& rng) {
  std::bernoulli_distribution coin(p);
  Relation r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) r[i][j] = coin(rng);
  return reflexive_transitive_closure(r);
}

/// Random preorder: random relation in both directions, then closure (usually not T0).
inline Relation random_preorder(std::size_t n, double p, std::mt19937& rng) {
  std::bernoulli_distribution coin(p);
  Relation r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = i != j && coin(rng);
  return reflexive_transitive_closure(r);
}

/// Random maximal faces on n vertices.
inline std::vector<std::vector<std::uint32_t>> random_faces(std::size_t n, std::size_t count, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint32_t> mask(1, (1u << n) - 1);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t k = 0; k < count; ++k) {
    auto m = mask(rng);
    // keep faces small so subdivisions stay modest
    while (std::popcount(m) > 4) m &= m - 1;
    std::vector<std::uint32_t> f;
    for (std::uint32_t v = 0; v < n; ++v)
      if (m >> v & 1) f.push_back(v);
    out.push_back(std::move(f));
  }
  return out;
}

inline std::vector<std::vector<double>> random_points(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

inline std::vector<std::vector<double>> euclidean(const std::vector<std::vector<double>>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
  return d;
}

/// Six points on the unit circle (side length 1).
inline std::vector<std::vector<double>> hexagon() {
  std::vector<std::vector<double>> pts;
  for (int k = 0; k < 6; ++k) {
    const double t = M_PI / 3 * k;
    pts.push_back({std::cos(t), std::sin(t)});
  }
  return pts;
}

inline std::vector<std::vector<double>> unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

}  // namespace oracle
