#pragma once

// Abstract simplicial complexes stored by their maximal simplices.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "finitetop/error.hpp"
#include "finitetop/limits.hpp"
#include "finitetop/poset.hpp"
#include "finitetop/subset.hpp"

namespace finitetop {

/// Sorted, duplicate-free vertex positions.
using Simplex = std::vector<std::uint32_t>;

/// Canonical simplex order: by size, then lexicographically.
struct SimplexLess {
  bool operator()(const Simplex& a, const Simplex& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept {
    std::size_t h = s.size();
    for (auto v : s) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

inline bool is_face_of(const Simplex& a, const Simplex& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

class AbstractComplex {
public:
  AbstractComplex() = default;

  /// From maximal faces given by vertex positions. Vertices not covered by any
  /// face become isolated 0-simplices; faces contained in others are absorbed.
  static AbstractComplex from_simplices(std::vector<std::string> vertices, std::vector<Simplex> faces) {
    AbstractComplex k;
    k.vertices_ = std::move(vertices);
    k.build_index();
    std::vector<char> covered(k.vertices_.size(), 0);
    for (auto& f : faces) {
      if (f.empty()) throw DomainError("complex faces must be nonempty");
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      for (auto v : f) {
        if (v >= k.vertices_.size()) throw DomainError("face refers to an unknown vertex");
        covered[v] = 1;
      }
    }
    for (std::uint32_t v = 0; v < k.vertices_.size(); ++v)
      if (!covered[v]) faces.push_back({v});
    // larger faces first; a face can only be absorbed by a strictly larger one
    std::sort(faces.begin(), faces.end(), [](const Simplex& a, const Simplex& b) {
      if (a.size() != b.size()) return a.size() > b.size();
      return a < b;
    });
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    std::vector<Simplex> kept;
    for (auto& f : faces) {
      bool absorbed = false;
      for (const auto& g : kept) {
        if (g.size() <= f.size()) break;
        if (is_face_of(f, g)) {
          absorbed = true;
          break;
        }
      }
      if (!absorbed) kept.push_back(std::move(f));
    }
    std::sort(kept.begin(), kept.end(), SimplexLess{});
    k.maximal_ = std::move(kept);
    return k;
  }

  /// From maximal faces given by vertex ids; vertex order is kept as given.
  static AbstractComplex from_maximal(std::vector<std::string> vertices,
                                      const std::vector<std::vector<std::string>>& faces) {
    AbstractComplex shell;
    shell.vertices_ = vertices;
    shell.build_index();
    std::vector<Simplex> pos;
    for (const auto& f : faces) {
      if (f.empty()) throw DomainError("complex faces must be nonempty");
      Simplex s;
      for (const auto& id : f) s.push_back(shell.vertex_index(id));
      pos.push_back(std::move(s));
    }
    return from_simplices(std::move(vertices), std::move(pos));
  }

  /// As from_maximal, with vertex ids sorted into canonical order first.
  static AbstractComplex canonical(std::vector<std::string> vertices,
                                   const std::vector<std::vector<std::string>>& faces) {
    std::sort(vertices.begin(), vertices.end(), NaturalLess{});
    return from_maximal(std::move(vertices), faces);
  }

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  const std::vector<Simplex>& maximal() const noexcept { return maximal_; }

  std::uint32_t vertex_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw DomainError("unknown vertex '" + id + "'");
    return it->second;
  }

  /// -1 for the empty complex.
  int dimension() const {
    int d = -1;
    for (const auto& m : maximal_) d = std::max(d, static_cast<int>(m.size()) - 1);
    return d;
  }

  bool contains(const Simplex& s) const {
    if (s.empty()) return false;
    for (const auto& m : maximal_)
      if (m.size() >= s.size() && is_face_of(s, m)) return true;
    return false;
  }

  Simplex simplex_of(const std::vector<std::string>& ids) const {
    Simplex s;
    for (const auto& id : ids) s.push_back(vertex_index(id));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  std::string label(const Simplex& s) const { return subset_label(vertices_, s); }

  /// Every simplex, in canonical order. Guarded by the face limit.
  std::vector<Simplex> simplices() const {
    std::unordered_set<Simplex, SimplexHash> seen;
    Simplex sub;
    for (const auto& m : maximal_) {
      if (m.size() >= 63) throw ResourceError("simplex too large to enumerate its faces");
      const std::uint64_t count = (std::uint64_t{1} << m.size()) - 1;
      for (std::uint64_t bits = 1; bits <= count; ++bits) {
        sub.clear();
        for (std::size_t i = 0; i < m.size(); ++i)
          if (bits >> i & 1) sub.push_back(m[i]);
        if (seen.insert(sub).second) require_faces(seen.size(), "complex face enumeration");
      }
    }
    std::vector<Simplex> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), SimplexLess{});
    return out;
  }

  std::vector<Simplex> simplices_of_dim(int q) const {
    std::vector<Simplex> out;
    for (auto& s : simplices())
      if (static_cast<int>(s.size()) == q + 1) out.push_back(std::move(s));
    return out;
  }

  /// Number of simplices per dimension.
  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f(static_cast<std::size_t>(dimension() + 1), 0);
    for (const auto& s : simplices()) ++f[s.size() - 1];
    return f;
  }

  std::vector<std::vector<std::string>> maximal_labels() const {
    std::vector<std::vector<std::string>> out;
    for (const auto& m : maximal_) {
      std::vector<std::string> f;
      for (auto v : m) f.push_back(vertices_[v]);
      out.push_back(std::move(f));
    }
    return out;
  }

  /// Identical vertex ids and simplices.
  friend bool operator==(const AbstractComplex& a, const AbstractComplex& b) {
    if (a.vertices_.size() != b.vertices_.size()) return false;
    auto canon = [](const AbstractComplex& k) {
      std::vector<std::vector<std::string>> f = k.maximal_labels();
      for (auto& s : f) std::sort(s.begin(), s.end());
      std::sort(f.begin(), f.end());
      std::vector<std::string> v = k.vertices_;
      std::sort(v.begin(), v.end());
      return std::pair{v, f};
    };
    return canon(a) == canon(b);
  }

private:
  void build_index() {
    index_.clear();
    if (vertices_.size() > UINT32_MAX) throw ResourceError("too many vertices");
    for (std::uint32_t i = 0; i < vertices_.size(); ++i)
      if (!index_.emplace(vertices_[i], i).second) throw DomainError("duplicate vertex id '" + vertices_[i] + "'");
  }

  std::vector<std::string> vertices_;
  std::vector<Simplex> maximal_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// ---------------------------------------------------------------------------
// Constructions

/// sd(K): vertices are the simplices of K, simplices are flags σ_0 ⊂ ... ⊂ σ_k.
/// Maximal flags are the complete flags of maximal simplices, one per vertex
/// ordering.
inline AbstractComplex barycentric_subdivision(const AbstractComplex& k) {
  const auto faces = k.simplices();
  std::unordered_map<Simplex, std::uint32_t, SimplexHash> pos;
  std::vector<std::string> labels;
  for (std::uint32_t i = 0; i < faces.size(); ++i) {
    pos.emplace(faces[i], i);
    labels.push_back(k.label(faces[i]));
  }
  std::vector<Simplex> flags;
  for (const auto& m : k.maximal()) {
    Simplex order = m;
    do {
      Simplex flag;
      Simplex prefix;
      for (auto v : order) {
        prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
        flag.push_back(pos.at(prefix));
      }
      std::sort(flag.begin(), flag.end());
      flags.push_back(std::move(flag));
      require_faces(flags.size(), "barycentric subdivision");
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return AbstractComplex::from_simplices(std::move(labels), std::move(flags));
}

/// Nerve of a named family: names span a simplex iff the sets meet.
inline AbstractComplex nerve(const std::vector<std::pair<std::string, std::vector<std::string>>>& family) {
  std::vector<std::string> names;
  std::map<std::string, Simplex> star;  // point -> names containing it
  for (std::uint32_t i = 0; i < family.size(); ++i) {
    const auto& [name, members] = family[i];
    if (members.empty()) throw DomainError("nerve: member '" + name + "' is empty");
    names.push_back(name);
    for (const auto& x : members) {
      auto& s = star[x];
      if (s.empty() || s.back() != i) s.push_back(i);
    }
  }
  std::vector<Simplex> faces;
  for (auto& [x, s] : star) faces.push_back(std::move(s));
  return AbstractComplex::from_simplices(std::move(names), std::move(faces));
}

/// Simplices with at most q+1 vertices.
inline AbstractComplex skeleton(const AbstractComplex& k, std::size_t q) {
  std::vector<Simplex> faces;
  for (const auto& m : k.maximal()) {
    if (m.size() <= q + 1) {
      faces.push_back(m);
      continue;
    }
    // all (q+1)-subsets of m
    std::vector<std::size_t> pick(q + 1);
    std::iota(pick.begin(), pick.end(), 0);
    const std::size_t n = m.size(), r = q + 1;
    while (true) {
      Simplex s;
      for (auto p : pick) s.push_back(m[p]);
      faces.push_back(std::move(s));
      require_faces(faces.size(), "skeleton");
      std::size_t i = r;
      while (i > 0 && pick[i - 1] == n - r + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return AbstractComplex::from_simplices(k.vertices(), std::move(faces));
}

// ---------------------------------------------------------------------------
// Distances and Vietoris–Rips

/// Symmetric, nonnegative distance matrix with zero diagonal.
class DistanceMatrix {
public:
  DistanceMatrix(std::vector<std::string> ids, std::vector<std::vector<double>> rows) : ids_(std::move(ids)) {
    const std::size_t n = ids_.size();
    if (rows.size() != n) throw DomainError("distance matrix must be square with one row per point");
    d_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw DomainError("distance matrix row " + std::to_string(i) + " has wrong length");
      for (std::size_t j = 0; j < n; ++j) {
        const double v = rows[i][j];
        if (!std::isfinite(v) || v < 0) throw DomainError("distance matrix entries must be finite and >= 0");
        d_[i * n + j] = v;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (d_[i * n + i] != 0) throw DomainError("distance matrix diagonal must be zero");
      for (std::size_t j = i + 1; j < n; ++j)
        if (d_[i * n + j] != d_[j * n + i])
          throw DomainError("distance matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }

  /// Euclidean distances between coordinate rows.
  static DistanceMatrix from_points(std::vector<std::string> ids, const std::vector<std::vector<double>>& pts) {
    const std::size_t n = pts.size();
    if (ids.size() != n) throw DomainError("one id per point required");
    for (const auto& p : pts)
      if (p.size() != (n ? pts[0].size() : 0)) throw DomainError("points must share one dimension");
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double s = 0;
        for (std::size_t c = 0; c < pts[i].size(); ++c) s += (pts[i][c] - pts[j][c]) * (pts[i][c] - pts[j][c]);
        rows[i][j] = rows[j][i] = std::sqrt(s);
      }
    return DistanceMatrix(std::move(ids), std::move(rows));
  }

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * ids_.size() + j]; }

private:
  std::vector<std::string> ids_;
  std::vector<double> d_;
};

/// Ids "0".."n-1".
inline std::vector<std::string> index_ids(std::size_t n) {
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i);
  return ids;
}

/// d < ε, with values within `tol` of ε treated as equal to it (hence excluded).
inline bool strictly_below(double d, double eps, double tol) { return d + tol < eps; }

inline void require_positive_eps(double eps) {
  if (!(eps > 0) || !std::isfinite(eps)) throw DomainError("ε must be a positive real");
}

/// R_ε: point sets of diameter strictly less than ε. Only maximal cliques
/// (Bron–Kerbosch with pivoting) are stored.
inline AbstractComplex vietoris_rips(const DistanceMatrix& d, double eps, double tol = 0.0) {
  require_positive_eps(eps);
  const std::size_t n = d.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) adj[i][j] = i != j && strictly_below(d(i, j), eps, tol);

  std::vector<Simplex> cliques;
  auto bk = [&](auto&& self, Simplex& r, std::vector<std::uint32_t> p, std::vector<std::uint32_t> x) -> void {
    if (p.empty() && x.empty()) {
      Simplex c = r;
      std::sort(c.begin(), c.end());
      cliques.push_back(std::move(c));
      require_faces(cliques.size(), "Vietoris-Rips maximal cliques");
      return;
    }
    std::uint32_t pivot = p.empty() ? x.front() : p.front();
    std::size_t best = 0;
    for (const auto* set : {&p, &x})
      for (auto u : *set) {
        std::size_t c = 0;
        for (auto v : p) c += adj[u][v];
        if (c >= best) {
          best = c;
          pivot = u;
        }
      }
    std::vector<std::uint32_t> candidates;
    for (auto v : p)
      if (!adj[pivot][v]) candidates.push_back(v);
    for (auto v : candidates) {
      std::vector<std::uint32_t> np, nx;
      for (auto w : p)
        if (adj[v][w]) np.push_back(w);
      for (auto w : x)
        if (adj[v][w]) nx.push_back(w);
      r.push_back(v);
      self(self, r, std::move(np), std::move(nx));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  };
  Simplex r;
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (n) bk(bk, r, all, {});
  return AbstractComplex::from_simplices(d.ids(), std::move(cliques));
}

// ---------------------------------------------------------------------------
// Simplicial maps

class SimplicialMap {
public:
  /// Rejects assignments under which some simplex does not land on a simplex.
  SimplicialMap(std::shared_ptr<const AbstractComplex> domain, std::shared_ptr<const AbstractComplex> codomain,
                std::vector<std::uint32_t> vertex_map)
      : dom_(std::move(domain)), cod_(std::move(codomain)), vmap_(std::move(vertex_map)) {
    if (vmap_.size() != dom_->vertex_count()) throw DomainError("simplicial map must assign every vertex");
    for (auto v : vmap_)
      if (v >= cod_->vertex_count()) throw DomainError("simplicial map image outside the codomain");
    for (const auto& m : dom_->maximal())
      if (!cod_->contains(image(m)))
        throw DomainError("not a simplicial map: image of " + dom_->label(m) + " is not a simplex");
  }

  static SimplicialMap from_labels(std::shared_ptr<const AbstractComplex> domain,
                                   std::shared_ptr<const AbstractComplex> codomain,
                                   const std::map<std::string, std::string>& assignment) {
    std::vector<std::uint32_t> v(domain->vertex_count());
    std::vector<char> set(v.size(), 0);
    for (const auto& [a, b] : assignment) {
      const auto i = domain->vertex_index(a);
      v[i] = codomain->vertex_index(b);
      set[i] = 1;
    }
    if (std::find(set.begin(), set.end(), 0) != set.end())
      throw DomainError("simplicial map must assign every vertex");
    return SimplicialMap(std::move(domain), std::move(codomain), std::move(v));
  }

  static SimplicialMap identity(std::shared_ptr<const AbstractComplex> k) {
    std::vector<std::uint32_t> v(k->vertex_count());
    std::iota(v.begin(), v.end(), 0);
    return SimplicialMap(k, k, std::move(v));
  }

  const AbstractComplex& domain() const noexcept { return *dom_; }
  const AbstractComplex& codomain() const noexcept { return *cod_; }
  const std::shared_ptr<const AbstractComplex>& domain_ptr() const noexcept { return dom_; }
  const std::shared_ptr<const AbstractComplex>& codomain_ptr() const noexcept { return cod_; }
  const std::vector<std::uint32_t>& vertex_map() const noexcept { return vmap_; }
  std::uint32_t operator()(std::uint32_t v) const { return vmap_.at(v); }

  /// Elementwise image of σ ∈ domain; duplicates collapse.
  Simplex apply(const Simplex& s) const {
    if (!dom_->contains(s)) throw DomainError("simplex is not in the domain complex");
    return image(s);
  }

private:
  Simplex image(const Simplex& s) const {
    Simplex out;
    out.reserve(s.size());
    for (auto v : s) out.push_back(vmap_[v]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::shared_ptr<const AbstractComplex> dom_, cod_;
  std::vector<std::uint32_t> vmap_;
};

inline SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  std::vector<std::uint32_t> v(f.domain().vertex_count());
  for (std::uint32_t i = 0; i < v.size(); ++i) v[i] = g(f(i));
  return SimplicialMap(f.domain_ptr(), g.codomain_ptr(), std::move(v));
}

// ---------------------------------------------------------------------------
// Isomorphism

inline constexpr std::size_t kMaxIsomorphismSimplices = 200;

/// Is there a vertex bijection carrying simplices onto simplices?
///
/// Cheap invariants are compared first, and a label-preserving bijection is
/// tried when both complexes use the same vertex ids. Only the backtracking
/// search is subject to `max_simplices`.
inline bool is_isomorphic(const AbstractComplex& k, const AbstractComplex& l,
                          std::size_t max_simplices = kMaxIsomorphismSimplices) {
  if (k.vertex_count() != l.vertex_count() || k.maximal().size() != l.maximal().size()) return false;
  {
    std::vector<std::size_t> mk, ml;
    for (const auto& m : k.maximal()) mk.push_back(m.size());
    for (const auto& m : l.maximal()) ml.push_back(m.size());
    std::sort(mk.begin(), mk.end());
    std::sort(ml.begin(), ml.end());
    if (mk != ml) return false;
  }
  if (k == l) return true;

  const auto sk = k.simplices();
  const auto sl = l.simplices();
  if (sk.size() != sl.size()) return false;
  if (k.f_vector() != l.f_vector()) return false;
  if (sk.size() + sl.size() > 2 * max_simplices)
    throw ResourceError("isomorphism search limited to complexes with at most " + std::to_string(max_simplices) +
                        " simplices");

  const std::size_t n = k.vertex_count();
  const std::size_t dims = static_cast<std::size_t>(k.dimension() + 1);
  auto signatures = [&](const AbstractComplex& c, const std::vector<Simplex>& all) {
    std::vector<std::vector<std::size_t>> sig(c.vertex_count(), std::vector<std::size_t>(dims, 0));
    for (const auto& s : all)
      for (auto v : s) ++sig[v][s.size() - 1];
    return sig;
  };
  const auto sig_k = signatures(k, sk);
  const auto sig_l = signatures(l, sl);
  {
    auto a = sig_k, b = sig_l;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  std::unordered_set<Simplex, SimplexHash> l_set(sl.begin(), sl.end());

  // vertices of k in decreasing degree; simplices of k grouped by last-assigned vertex
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sig_k[a] > sig_k[b]; });
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;
  std::vector<std::vector<const Simplex*>> closing(n);
  for (const auto& s : sk) {
    std::uint32_t last = s.front();
    for (auto v : s)
      if (rank[v] > rank[last]) last = v;
    closing[rank[last]].push_back(&s);
  }

  std::vector<std::int64_t> image(n, -1);
  std::vector<char> used(n, 0);
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const auto v = order[depth];
    for (std::uint32_t w = 0; w < n; ++w) {
      if (used[w] || sig_l[w] != sig_k[v]) continue;
      image[v] = w;
      bool ok = true;
      for (const auto* s : closing[depth]) {
        Simplex img;
        for (auto u : *s) img.push_back(static_cast<std::uint32_t>(image[u]));
        std::sort(img.begin(), img.end());
        if (!l_set.count(img)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used[w] = 1;
        if (self(self, depth + 1)) return true;
        used[w] = 0;
      }
    }
    image[v] = -1;
    return false;
  };
  return search(search, 0);
}

// ---------------------------------------------------------------------------

/// Graphviz rendering of the 1-skeleton.
inline std::string to_dot(const AbstractComplex& k, const std::string& name = "complex") {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (const auto& v : k.vertices()) os << "  " << detail::dot_quote(v) << ";\n";
  for (const auto& s : k.simplices_of_dim(1))
    os << "  " << detail::dot_quote(k.vertices()[s[0]]) << " -- " << detail::dot_quote(k.vertices()[s[1]]) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace finitetop
