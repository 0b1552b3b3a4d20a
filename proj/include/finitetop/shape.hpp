#pragma once

// ε-neighborhoods of finite metric spaces, their McCord stages, and
// Betti / transition-rank reports along an ε grid.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <future>
#include <istream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "finitetop/error.hpp"
#include "finitetop/homology.hpp"
#include "finitetop/mccord.hpp"
#include "finitetop/simcomplex.hpp"

namespace finitetop {

/// Largest metric space for which u_epsilon_f enumerates subsets.
inline constexpr std::size_t kMaxSubsetEnumerationPoints = 14;

/// A finite metric space: a distance matrix with positive off-diagonal entries.
class FiniteMetricSpace {
public:
  /// With `strict_triangle`, the triangle inequality is checked as well
  /// (up to a relative rounding slack of 1e-12).
  explicit FiniteMetricSpace(DistanceMatrix d, bool strict_triangle = false) : d_(std::move(d)) {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!(d_(i, j) > 0))
          throw DomainError("points '" + d_.ids()[i] + "' and '" + d_.ids()[j] + "' are at distance 0");
    if (strict_triangle)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) {
            const double via = d_(i, j) + d_(j, k);
            if (d_(i, k) > via + 1e-12 * std::max(1.0, via))
              throw DomainError("triangle inequality fails for '" + d_.ids()[i] + "', '" + d_.ids()[j] + "', '" +
                                d_.ids()[k] + "'");
          }
  }

  static FiniteMetricSpace from_points(const std::vector<std::vector<double>>& pts, bool strict_triangle = false) {
    return FiniteMetricSpace(DistanceMatrix::from_points(index_ids(pts.size()), pts), strict_triangle);
  }

  std::size_t size() const noexcept { return d_.size(); }
  const std::vector<std::string>& ids() const noexcept { return d_.ids(); }
  const DistanceMatrix& distances() const noexcept { return d_; }
  double operator()(std::size_t i, std::size_t j) const { return d_(i, j); }

  double diameter() const {
    double m = 0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j) m = std::max(m, d_(i, j));
    return m;
  }

private:
  DistanceMatrix d_;
};

// ---------------------------------------------------------------------------
// CSV input

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Nonblank, non-comment lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> csv_rows(std::istream& in) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    rows.emplace_back(no, split_csv_line(t));
  }
  return rows;
}

inline bool all_numeric(const std::vector<std::string>& cells) {
  return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return parse_number(c).has_value(); });
}

inline double csv_number(const std::string& source, std::size_t line, std::size_t field, const std::string& cell) {
  auto v = parse_number(cell);
  if (!v || !std::isfinite(*v))
    throw DomainError(source + " line " + std::to_string(line) + ", field " + std::to_string(field + 1) + ": '" +
                      cell + "' is not a finite number");
  return *v;
}

}  // namespace detail

/// One point per row, coordinates separated by commas. A first row that is
/// not entirely numeric is taken as a header and skipped.
inline FiniteMetricSpace read_point_cloud_csv(std::istream& in, const std::string& source = "points",
                                              bool strict_triangle = false) {
  auto rows = detail::csv_rows(in);
  if (!rows.empty() && !detail::all_numeric(rows.front().second)) rows.erase(rows.begin());
  if (rows.empty()) throw DomainError(source + ": no points");
  std::vector<std::vector<double>> pts;
  const std::size_t dim = rows.front().second.size();
  for (const auto& [line, cells] : rows) {
    if (cells.size() != dim)
      throw DomainError(source + " line " + std::to_string(line) + ": expected " + std::to_string(dim) +
                        " coordinates, found " + std::to_string(cells.size()));
    std::vector<double> p;
    for (std::size_t f = 0; f < cells.size(); ++f) p.push_back(detail::csv_number(source, line, f, cells[f]));
    pts.push_back(std::move(p));
  }
  return FiniteMetricSpace::from_points(pts, strict_triangle);
}

/// A square distance matrix, optionally preceded by a header row of point ids.
inline FiniteMetricSpace read_distance_matrix_csv(std::istream& in, const std::string& source = "matrix",
                                                  bool strict_triangle = false) {
  auto rows = detail::csv_rows(in);
  std::vector<std::string> ids;
  if (!rows.empty() && !detail::all_numeric(rows.front().second)) {
    ids = rows.front().second;
    rows.erase(rows.begin());
  }
  if (rows.empty()) throw DomainError(source + ": no rows");
  if (ids.empty()) ids = index_ids(rows.size());
  if (ids.size() != rows.size())
    throw DomainError(source + ": header names " + std::to_string(ids.size()) + " points but there are " +
                      std::to_string(rows.size()) + " rows");
  std::vector<std::vector<double>> m;
  for (const auto& [line, cells] : rows) {
    if (cells.size() != rows.size())
      throw DomainError(source + " line " + std::to_string(line) + ": expected " + std::to_string(rows.size()) +
                        " entries, found " + std::to_string(cells.size()));
    std::vector<double> r;
    for (std::size_t f = 0; f < cells.size(); ++f) r.push_back(detail::csv_number(source, line, f, cells[f]));
    m.push_back(std::move(r));
  }
  return FiniteMetricSpace(DistanceMatrix(std::move(ids), std::move(m)), strict_triangle);
}

// ---------------------------------------------------------------------------
// Stages

/// U_ε^f: all nonempty point sets of diameter < ε.
inline SimplicialNeighborhood u_epsilon_f(const FiniteMetricSpace& m, double eps, double tol = 0.0) {
  require_positive_eps(eps);
  const std::size_t n = m.size();
  if (n > kMaxSubsetEnumerationPoints)
    throw ResourceError("u_epsilon_f enumerates subsets of at most " + std::to_string(kMaxSubsetEnumerationPoints) +
                        " points, got " + std::to_string(n));
  std::vector<std::uint32_t> near(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && strictly_below(m(i, j), eps, tol)) near[i] |= 1u << j;
  const std::uint32_t full = n == 0 ? 0 : (1u << n);
  std::vector<char> small(full, 0);
  std::vector<Simplex> members;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    small[mask] = rest == 0 || (small[rest] && (near[static_cast<std::size_t>(low)] & rest) == rest);
    if (!small[mask]) continue;
    Simplex s;
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    members.push_back(std::move(s));
  }
  return SimplicialNeighborhood::from_members(m.ids(), std::move(members), SimplicialNeighborhood::Load::strict);
}

/// 𝒦(U_ε^f): chains of ε-small subsets.
inline AbstractComplex mccord_stage(const FiniteMetricSpace& m, double eps, double tol = 0.0) {
  return order_complex(u_epsilon_f(m, eps, tol));
}

inline AbstractComplex rips(const FiniteMetricSpace& m, double eps, double tol = 0.0) {
  return vietoris_rips(m.distances(), eps, tol);
}

/// The McCord stage is the barycentric subdivision of R_ε: checks that U_ε^f
/// and R_ε have the same simplices, that the stage is isomorphic to sd(R_ε),
/// and that both have the same homology.
inline bool verify_rips_correspondence(const FiniteMetricSpace& m, double eps, double tol = 0.0) {
  const auto u = u_epsilon_f(m, eps, tol);
  const auto r = rips(m, eps, tol);
  if (u.members() != r.simplices()) return false;
  const auto stage = order_complex(u);
  const auto sd = barycentric_subdivision(r);
  return is_isomorphic(stage, sd) && homology(stage) == homology(sd);
}

/// The inclusion R_{ε'} ⊆ R_ε.
inline SimplicialMap rips_inclusion(const FiniteMetricSpace& m, double eps_lo, double eps_hi, double tol = 0.0) {
  require_positive_eps(eps_lo);
  require_positive_eps(eps_hi);
  if (eps_lo > eps_hi) throw DomainError("transition needs ε' <= ε");
  std::vector<std::uint32_t> id(m.size());
  std::iota(id.begin(), id.end(), 0);
  return SimplicialMap(std::make_shared<const AbstractComplex>(rips(m, eps_lo, tol)),
                       std::make_shared<const AbstractComplex>(rips(m, eps_hi, tol)), std::move(id));
}

/// Rank over ℚ of H_q(R_{ε'}) → H_q(R_ε).
inline std::size_t transition_rank(const FiniteMetricSpace& m, double eps_lo, double eps_hi, int q,
                                   double tol = 0.0) {
  return induced_homology_rank(rips_inclusion(m, eps_lo, eps_hi, tol), q);
}

struct ShapeOptions {
  double tol = 0.0;
  /// Process ε stages on separate threads; the report is identical either way.
  bool parallel = false;
};

struct ShapeReport {
  std::vector<double> eps;
  std::vector<HomologyResult> homology;
  /// transition[i][q]: rank of H_q at eps[i] → H_q at eps[i+1].
  std::vector<std::vector<std::size_t>> transition;
  std::vector<AbstractComplex> stages;
};

inline ShapeReport shape_scan(const FiniteMetricSpace& m, const std::vector<double>& grid, ShapeOptions opts = {}) {
  if (grid.empty()) throw DomainError("ε grid must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_positive_eps(grid[i]);
    if (i > 0 && !(grid[i - 1] < grid[i])) throw DomainError("ε grid must be strictly increasing");
  }
  ShapeReport rep;
  rep.eps = grid;
  auto stage = [&](std::size_t i) {
    auto k = rips(m, grid[i], opts.tol);
    auto h = homology(k);
    return std::make_pair(std::move(k), std::move(h));
  };
  auto pair_ranks = [&](std::size_t i, std::size_t dims) {
    std::vector<std::size_t> r;
    const auto inc = rips_inclusion(m, grid[i], grid[i + 1], opts.tol);
    for (std::size_t q = 0; q < dims; ++q) r.push_back(induced_homology_rank(inc, static_cast<int>(q)));
    return r;
  };
  std::vector<std::pair<AbstractComplex, HomologyResult>> stages;
  if (opts.parallel) {
    std::vector<std::future<std::pair<AbstractComplex, HomologyResult>>> jobs;
    for (std::size_t i = 0; i < grid.size(); ++i) jobs.push_back(std::async(std::launch::async, stage, i));
    for (auto& j : jobs) stages.push_back(j.get());
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) stages.push_back(stage(i));
  }
  for (auto& [k, h] : stages) {
    rep.stages.push_back(std::move(k));
    rep.homology.push_back(std::move(h));
  }
  if (opts.parallel) {
    std::vector<std::future<std::vector<std::size_t>>> jobs;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
      jobs.push_back(std::async(std::launch::async, pair_ranks, i, rep.homology[i].betti.size()));
    for (auto& j : jobs) rep.transition.push_back(j.get());
  } else {
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
      rep.transition.push_back(pair_ranks(i, rep.homology[i].betti.size()));
  }
  return rep;
}

}  // namespace finitetop
