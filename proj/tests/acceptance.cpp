// Acceptance suite: one PASS/FAIL line per criterion, each under a time budget.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "finitetop/homology.hpp"
#include "finitetop/hyperspace.hpp"
#include "finitetop/invlimit.hpp"
#include "finitetop/mccord.hpp"
#include "finitetop/shape.hpp"
#include "oracles.hpp"

using namespace finitetop;

namespace {

struct Check {
  bool ok = true;
  std::string why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

FinitePreorder from_relation(const oracle::Relation& r) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < r.size(); ++i) ids.push_back(std::to_string(i + 1));
  return FinitePreorder::from_predicate(ids, [&](std::size_t a, std::size_t b) { return bool(r[a][b]); });
}

AbstractComplex from_faces(std::size_t n, const std::vector<std::vector<std::uint32_t>>& faces) {
  return AbstractComplex::from_simplices(index_ids(n), faces);
}

AbstractComplex octahedron() {
  std::vector<std::vector<std::uint32_t>> f;
  for (std::uint32_t a : {0u, 1u})
    for (std::uint32_t b : {2u, 3u})
      for (std::uint32_t c : {4u, 5u}) f.push_back({a, b, c});
  return from_faces(6, f);
}

std::vector<std::pair<std::string, AbstractComplex>> fixed_suite() {
  return {{"edge", from_faces(2, {{0, 1}})},
          {"path", from_faces(4, {{0, 1}, {1, 2}, {2, 3}})},
          {"hollow triangle", from_faces(3, {{0, 1}, {1, 2}, {0, 2}})},
          {"full triangle", from_faces(3, {{0, 1, 2}})},
          {"hollow square", from_faces(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})},
          {"octahedron boundary", octahedron()}};
}

std::vector<std::pair<std::string, AbstractComplex>> full_suite() {
  auto suite = fixed_suite();
  std::mt19937 rng(6006);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 1 + rng() % 6;
    suite.emplace_back("random #" + std::to_string(i), from_faces(n, oracle::random_faces(n, 1 + rng() % 5, rng)));
  }
  return suite;
}

// Every order automorphism of r, as point permutations, by backtracking.
std::vector<std::vector<std::size_t>> all_automorphisms(const oracle::Relation& r) {
  const std::size_t n = r.size();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> img(n);
  std::vector<char> used(n, 0);
  auto go = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      out.push_back(img);
      return;
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j)
        ok = r[k][j] == r[y][img[j]] && r[j][k] == r[img[j]][y];
      if (!ok) continue;
      img[k] = y;
      used[y] = 1;
      self(self, k + 1);
      used[y] = 0;
    }
  };
  go(go, 0);
  return out;
}

Check hyperspace_counting() {
  Check c;
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto h = power_finite(n);
    const std::string at = " (n = " + std::to_string(n) + ")";
    c.require(h.size() == (std::size_t{1} << n) - 1, "point count" + at);
    for (std::size_t i = 0; i < h.size(); ++i)
      if (h.down_set(i).size() != (std::size_t{1} << h.cardinality(i)) - 1) {
        c.require(false, "minimal neighborhood size of " + h.label(i) + at);
        break;
      }
    c.require(is_t0(h), "T0" + at);
    c.require(is_t1(h) == (n == 1), "T1" + at);
  }
  return c;
}

Check automorphism_law() {
  Check c;
  for (std::size_t n = 1; n <= 5; ++n)
    c.require(automorphism_group_order(power_finite(n)) == factorial(n), "group order n = " + std::to_string(n));
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto h = power_finite(n);
    // the oracle's points are masks 1..2^n-1; map them to the library's indices
    std::vector<std::size_t> at((std::size_t{1} << n) - 1);
    for (std::size_t m = 1; m < (std::size_t{1} << n); ++m) {
      std::vector<std::string> s;
      for (std::size_t b = 0; b < n; ++b)
        if (m >> b & 1) s.push_back(std::to_string(b + 1));
      at[m - 1] = h.index_of(Subset(s));
    }
    const auto autos = all_automorphisms(oracle::subset_order(n));
    for (std::size_t cm = 1; cm < (std::size_t{1} << n); ++cm)
      for (std::size_t dm = 1; dm < (std::size_t{1} << n); ++dm) {
        std::uint64_t brute = 0;
        for (const auto& a : autos) brute += a[cm - 1] == dm - 1;
        const auto got = count_homeos_sending(h, h.point(at[cm - 1]), h.point(at[dm - 1]));
        const auto k = static_cast<std::size_t>(std::popcount(cm));
        const std::uint64_t law = std::popcount(cm) == std::popcount(dm) ? factorial(k) * factorial(n - k) : 0;
        c.require(got == brute && got == law, "count_homeos_sending n = " + std::to_string(n));
      }
  }
  return c;
}

Check contractibility() {
  Check c;
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto h = power_finite(n);
    c.require(core(materialize(h)).size() == 1, "core n = " + std::to_string(n));
    // betti (1): one component, nothing above dimension 0
    const auto b = homology(order_complex(h)).betti;
    c.require(!b.empty() && b[0] == 1 && static_cast<std::size_t>(std::count(b.begin(), b.end(), 0u)) == b.size() - 1,
              "order complex homology n = " + std::to_string(n));
  }
  return c;
}

Check inverse_limit() {
  Check c;
  for (std::uint64_t n = 2; n <= 12; ++n)
    c.require(verify_h_bijection(n).all_pass(), "verify_h_bijection n = " + std::to_string(n));
  for (std::uint64_t n = 1; n <= 4; ++n)
    c.require(enumerate_limit(InverseSystem(DirectedIndex::chain(n))).size() == (std::size_t{1} << n) - 1,
              "thread count n = " + std::to_string(n));
  for (const auto& c2 : stage_points(initial_segment(6)))
    for (const auto& c1 : stage_points(c2))
      for (const auto& c0 : stage_points(c1))
        for (const auto& d : stage_points(c2))
          if (bonding(c0, c2, d) != bonding(c0, c1, bonding(c1, c2, d))) {
            c.require(false, "functoriality at " + c0.label() + " ⊆ " + c1.label() + " ⊆ " + c2.label());
            return c;
          }
  return c;
}

Check mccord_correspondence() {
  Check c;
  for (const auto& [name, k] : full_suite()) {
    c.require(is_isomorphic(functor_Y(neighborhood_of(k)), k), "Y(X(K)) for " + name);
    c.require(is_isomorphic(order_complex(face_poset(k)), barycentric_subdivision(k)), "K(X(K)) for " + name);
  }
  return c;
}

Check homology_oracle() {
  Check c;
  const FinitePreorder circle({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  c.require(homology(order_complex(circle)).betti == std::vector<std::size_t>{1, 1}, "circle model");
  c.require(homology(octahedron()).betti == std::vector<std::size_t>{1, 0, 1}, "octahedron boundary");
  for (const auto& [name, k] : full_suite())
    c.require(homology(barycentric_subdivision(k)) == homology(k), "subdivision invariance for " + name);
  return c;
}

Check rips_correspondence() {
  Check c;
  std::mt19937 rng(7007);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 2 + rng() % 6;
    const auto m = FiniteMetricSpace::from_points(oracle::random_points(n, rng));
    for (int e = 0; e < 3; ++e) {
      const double eps = 0.1 + std::uniform_real_distribution<double>(0, 0.9)(rng);
      c.require(verify_rips_correspondence(m, eps), "random space #" + std::to_string(i));
    }
  }
  const auto square = FiniteMetricSpace::from_points(oracle::unit_square());
  for (double eps : {0.5, 1.2, 1.5}) c.require(verify_rips_correspondence(square, eps), "unit square");
  const auto hex = FiniteMetricSpace::from_points(oracle::hexagon());
  for (double eps : {0.9, 1.1, 1.7, 1.9}) c.require(verify_rips_correspondence(hex, eps), "hexagon");
  const auto rep = shape_scan(hex, {1.1, 1.7});
  c.require(betti(rep.homology[0], 1) == 1 && betti(rep.homology[1], 1) == 1, "hexagon betti_1 on [1.1, 1.7]");
  c.require(rep.transition[0].size() > 1 && rep.transition[0][1] == 1, "hexagon transition rank 1.1 -> 1.7");
  return c;
}

Check embedding_laws() {
  Check c;
  std::mt19937 rng(8008);
  for (int i = 0; i < 50; ++i) {
    const auto p = from_relation(oracle::random_poset(1 + rng() % 8, 0.35, rng));
    c.require(is_order_embedding(p, rho_embedding(p)), "ρ order embedding on random poset #" + std::to_string(i));
  }
  const FinitePreorder x({"1", "2", "3"}, {{0, 1}, {0, 2}, {1, 2}, {2, 1}});
  bool rejected = false;
  try {
    rho_embedding(x);
  } catch (const NotT0Error& e) {
    rejected = e.first == "2" && e.second == "3";
  }
  c.require(rejected, "ρ on the non-T0 three-point space");
  for (int i = 0; i < 400; ++i) {
    const auto p = from_relation(oracle::random_poset(1 + rng() % 5, 0.3, rng));
    c.require(singleton_map_continuity(p) == is_antichain(p), "singleton map on random poset #" + std::to_string(i));
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {"hyperspace counting", 5, hyperspace_counting},
      {"automorphism law", 30, automorphism_law},
      {"contractibility", 60, contractibility},
      {"extension and inverse limit", 30, inverse_limit},
      {"McCord correspondence", 30, mccord_correspondence},
      {"homology oracle", 60, homology_oracle},
      {"Rips correspondence", 120, rips_correspondence},
      {"embedding laws", 60, embedding_laws},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& cr = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Check result;
    try {
      result = cr.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (result.ok && secs > cr.budget_s) {
      result.ok = false;
      result.why = "over the time budget";
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", secs, cr.budget_s);
    std::cout << (result.ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << cr.name << " (" << timing << ")";
    if (!result.ok) std::cout << ": " << result.why;
    std::cout << '\n';
    failed += !result.ok;
  }
  return failed == 0 ? 0 : 1;
}
