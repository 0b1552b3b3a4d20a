#pragma once

// The finitetop command line. run() returns the process exit code:
// 0 on success, 2 for invalid input or unmet preconditions, 3 when a size
// guard rejects the request.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "finitetop/error.hpp"
#include "finitetop/homology.hpp"
#include "finitetop/hyperspace.hpp"
#include "finitetop/invlimit.hpp"
#include "finitetop/io.hpp"
#include "finitetop/mccord.hpp"
#include "finitetop/poset.hpp"
#include "finitetop/shape.hpp"
#include "finitetop/simcomplex.hpp"

namespace finitetop::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitResource = 3;

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline io::json load_json(const std::string& path) { return io::parse_json(slurp(path), path); }

inline FiniteMetricSpace load_metric(const std::string& path, const std::string& metric, bool strict) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read '" + path + "'");
  if (metric == "matrix") return read_distance_matrix_csv(in, path, strict);
  return read_point_cloud_csv(in, path, strict);
}

inline void print_json(std::ostream& out, const io::json& j) { out << j.dump(2) << '\n'; }

inline std::string thread_label(const std::vector<NatSubset>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i].label();
  return s + ")";
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"finitetop: finite spaces, hyperspaces, inverse limits, McCord complexes and shape scans"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "finitetop 1.0");

  std::string in_path, points_path, metric = "euclidean", format = "json", eps_list, dot_dir;
  std::size_t n = 0, q = 0;
  std::optional<std::size_t> cap;
  double eps = 0, tol = 0;
  bool strict = false, parallel = false, strict_triangle = false;

  auto add_in = [&](CLI::App* c, const std::string& what) {
    c->add_option("--in", in_path, what)->required()->check(CLI::ExistingFile);
  };
  auto add_format = [&](CLI::App* c, std::vector<std::string> choices) {
    c->add_option("--format", format, "Output format")->check(CLI::IsMember(choices))->capture_default_str();
  };

  // poset
  auto* poset = app.add_subcommand("poset", "Finite preorders given as JSON {elements, covers, t0}");
  poset->require_subcommand(1);
  auto* poset_check = poset->add_subcommand("check", "Report T0, T1, antichain and size");
  add_in(poset_check, "Poset JSON");
  auto* poset_core = poset->add_subcommand("core", "Remove beat points until none remain");
  add_in(poset_core, "Poset JSON (must be T0)");
  add_format(poset_core, {"json", "dot"});
  auto* poset_show = poset->add_subcommand("show", "Print the closed order as JSON covers or a DOT Hasse diagram");
  add_in(poset_show, "Poset JSON");
  add_format(poset_show, {"json", "dot"});

  // hyper
  auto* hyper = app.add_subcommand("hyper", "Hyperspaces 2^X_f of finite discrete sets");
  hyper->require_subcommand(1);
  auto* hyper_build = hyper->add_subcommand("build", "Materialize 2^X_f (optionally 2^X_r) and print its points");
  auto* hb_n = hyper_build->add_option("--n", n, "Ground set {1..n}");
  auto* hb_in = hyper_build->add_option("--in", in_path, "Request JSON {ground, cap}")->check(CLI::ExistingFile);
  hb_n->excludes(hb_in);
  hyper_build->add_option("--cap", cap, "Largest subset cardinality r");
  add_format(hyper_build, {"json", "dot"});
  auto* hyper_auto = hyper->add_subcommand("auto", "Order of the self-homeomorphism group of 2^{1..n}_f");
  hyper_auto->add_option("--n", n, "Ground set size (at most 8)")->required();
  auto* hyper_count = hyper->add_subcommand("count", "Number of points of 2^{1..n}_f (or 2^{1..n}_r)");
  hyper_count->add_option("--n", n, "Ground set size")->required();
  hyper_count->add_option("--cap", cap, "Largest subset cardinality r");
  auto* hyper_space = hyper->add_subcommand("of-space", "Hyperspace of a finite space: up-sets ordered by C ⊆ ↓D");
  add_in(hyper_space, "Poset JSON");
  add_format(hyper_space, {"json", "dot"});

  // invlimit
  auto* inv = app.add_subcommand("invlimit", "The inverse sequence 2^{1..n}_f and the extension of 2^N_f");
  inv->require_subcommand(1);
  auto* inv_demo = inv->add_subcommand("demo", "Print the unrolled inverse sequence");
  inv_demo->add_option("--n", n, "Number of stages (1..5)")->required();
  inv_demo->add_option("--format", format, "Output format (text or dot)")->check(CLI::IsMember({"text", "dot"}));
  auto* inv_verify = inv->add_subcommand("verify", "Check the map h onto the truncated limit");
  inv_verify->add_option("--n", n, "Truncation (1..12)")->required();

  // complex
  auto* cx = app.add_subcommand("complex", "Abstract simplicial complexes given as JSON {vertices, maximal}");
  cx->require_subcommand(1);
  auto* cx_rips = cx->add_subcommand("rips", "Vietoris-Rips complex: point sets of diameter < eps");
  cx_rips->add_option("--points", points_path, "Point-cloud CSV (or distance matrix with --metric matrix)")
      ->required()
      ->check(CLI::ExistingFile);
  cx_rips->add_option("--metric", metric, "Input kind")->check(CLI::IsMember({"euclidean", "matrix"}));
  cx_rips->add_option("--eps", eps, "Scale ε > 0")->required();
  cx_rips->add_option("--tol", tol, "Distances within tol of ε count as equal to ε");
  add_format(cx_rips, {"json", "dot"});
  auto* cx_sd = cx->add_subcommand("sd", "Barycentric subdivision");
  add_in(cx_sd, "Complex JSON");
  add_format(cx_sd, {"json", "dot"});
  auto* cx_nerve = cx->add_subcommand("nerve", "Nerve of a cover given as JSON {sets: {name: [members]}}");
  add_in(cx_nerve, "Cover JSON");
  add_format(cx_nerve, {"json", "dot"});
  auto* cx_skel = cx->add_subcommand("skeleton", "Simplices of dimension at most q");
  add_in(cx_skel, "Complex JSON");
  cx_skel->add_option("--q", q, "Dimension bound")->required();
  add_format(cx_skel, {"json", "dot"});

  // mccord
  auto* mc = app.add_subcommand("mccord", "Order complexes, face posets and simplicial neighborhoods");
  mc->require_subcommand(1);
  auto* mc_k = mc->add_subcommand("k", "Order complex of a finite T0 space");
  add_in(mc_k, "Poset JSON");
  add_format(mc_k, {"json", "dot"});
  auto* mc_x = mc->add_subcommand("x", "Face poset of a complex");
  add_in(mc_x, "Complex JSON");
  add_format(mc_x, {"json", "dot", "neighborhood"});
  auto* mc_y = mc->add_subcommand("y", "Complex of a simplicial neighborhood JSON {vertices, members}");
  add_in(mc_y, "Neighborhood JSON");
  mc_y->add_flag("--strict", strict, "Reject families that are not down-closed instead of closing them");
  add_format(mc_y, {"json", "dot"});
  auto* mc_rt = mc->add_subcommand("roundtrip", "Check Y(X(K)) = K and K(X(K)) = sd(K)");
  add_in(mc_rt, "Complex JSON");
  auto* mc_rho = mc->add_subcommand("rho", "The embedding x -> B_x of a T0 space into its hyperspace");
  add_in(mc_rho, "Poset JSON");

  // homology
  auto* hom = app.add_subcommand("homology", "Unreduced integral homology of a complex");
  add_in(hom, "Complex JSON");
  hom->add_flag("--parallel", parallel, "Compute each dimension on its own thread");

  // shape
  auto* shape = app.add_subcommand("shape", "ε filtrations of finite metric spaces");
  shape->require_subcommand(1);
  auto* scan = shape->add_subcommand("scan", "Homology of R_ε along an ε grid with transition ranks");
  scan->add_option("--points", points_path, "Point-cloud CSV (or distance matrix with --metric matrix)")
      ->required()
      ->check(CLI::ExistingFile);
  scan->add_option("--eps", eps_list, "Strictly increasing comma-separated ε values")->required();
  scan->add_option("--metric", metric, "Input kind")->check(CLI::IsMember({"euclidean", "matrix"}));
  scan->add_option("--tol", tol, "Distances within tol of ε count as equal to ε");
  scan->add_flag("--strict-triangle", strict_triangle, "Also check the triangle inequality");
  scan->add_option("--dot-dir", dot_dir, "Write stage_<i>.dot for every ε")->check(CLI::ExistingDirectory);
  scan->add_flag("--parallel", parallel, "Process ε stages on separate threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "finitetop: error: " << e.what() << '\n';
    return kExitDomain;
  }

  try {
    auto emit_order = [&](const FinitePreorder& p) {
      if (format == "dot")
        out << to_dot(p);
      else
        detail::print_json(out, io::poset_to_json(p));
    };
    auto emit_complex = [&](const AbstractComplex& k) {
      if (format == "dot")
        out << to_dot(k);
      else
        detail::print_json(out, io::complex_to_json(k));
    };

    if (poset_check->parsed()) {
      const auto p = io::poset_from_json(detail::load_json(in_path), in_path);
      detail::print_json(out, {{"antichain", is_antichain(p)}, {"size", p.size()}, {"t0", is_t0(p)}, {"t1", is_t1(p)}});
    } else if (poset_core->parsed()) {
      emit_order(core(io::poset_from_json(detail::load_json(in_path), in_path)));
    } else if (poset_show->parsed()) {
      emit_order(io::poset_from_json(detail::load_json(in_path), in_path));
    } else if (hyper_build->parsed()) {
      io::HyperspaceRequest req;
      if (!in_path.empty()) {
        req = io::hyperspace_request_from_json(detail::load_json(in_path), in_path);
        if (cap) req.cap = cap;
      } else {
        if (n == 0) throw DomainError("--n: give a ground size n >= 1 or --in");
        req.ground = numbered_ground(n);
        req.cap = cap;
      }
      const auto h = MaterializedHyperspace::build(req.ground, req.cap);
      if (format == "dot")
        out << to_dot(h, "hyperspace");
      else
        detail::print_json(out, io::hyperspace_to_json(h));
    } else if (hyper_auto->parsed()) {
      if (n == 0) throw DomainError("--n: expected n >= 1");
      if (n > kMaxAutomorphismGround)
        throw ResourceError("automorphism enumeration is limited to n <= " + std::to_string(kMaxAutomorphismGround));
      out << automorphism_group_order(power_finite(n)) << '\n';
    } else if (hyper_count->parsed()) {
      if (n == 0) throw DomainError("--n: expected n >= 1");
      out << power_finite(n, cap).size() << '\n';
    } else if (hyper_space->parsed()) {
      emit_order(hyperspace_of_finite_space(io::poset_from_json(detail::load_json(in_path), in_path)));
    } else if (inv_demo->parsed()) {
      out << (format == "dot" ? unrolling_dot(n) : unrolling_table(n));
    } else if (inv_verify->parsed()) {
      const auto r = verify_h_bijection(n);
      auto pass = [](bool b) { return b ? "pass" : "FAIL"; };
      out << "n = " << r.n << '\n'
          << "well-defined: " << pass(r.well_defined) << '\n'
          << "injective: " << pass(r.injective) << '\n'
          << "top thread h(N) = " << detail::thread_label(r.top_thread) << ": " << pass(r.top_prefix) << '\n'
          << "order-preserving: " << pass(r.order_preserving) << '\n'
          << "all checks: " << pass(r.all_pass()) << '\n';
      if (!r.all_pass()) return kExitDomain;
    } else if (cx_rips->parsed()) {
      emit_complex(rips(detail::load_metric(points_path, metric, false), eps, tol));
    } else if (cx_sd->parsed()) {
      emit_complex(barycentric_subdivision(io::complex_from_json(detail::load_json(in_path), in_path)));
    } else if (cx_nerve->parsed()) {
      emit_complex(nerve(io::cover_from_json(detail::load_json(in_path), in_path)));
    } else if (cx_skel->parsed()) {
      emit_complex(skeleton(io::complex_from_json(detail::load_json(in_path), in_path), q));
    } else if (mc_k->parsed()) {
      emit_complex(order_complex(io::poset_from_json(detail::load_json(in_path), in_path)));
    } else if (mc_x->parsed()) {
      const auto k = io::complex_from_json(detail::load_json(in_path), in_path);
      if (format == "neighborhood")
        detail::print_json(out, io::neighborhood_to_json(neighborhood_of(k)));
      else
        emit_order(face_poset(k));
    } else if (mc_y->parsed()) {
      emit_complex(functor_Y(io::neighborhood_from_json(detail::load_json(in_path), strict, in_path)));
    } else if (mc_rt->parsed()) {
      const auto k = io::complex_from_json(detail::load_json(in_path), in_path);
      const bool y_of_x = functor_Y(neighborhood_of(k)) == k;
      const bool k_of_x = is_isomorphic(order_complex(face_poset(k)), barycentric_subdivision(k));
      detail::print_json(out, {{"k_of_x_is_sd", k_of_x}, {"y_of_x_is_identity", y_of_x}});
      if (!(y_of_x && k_of_x)) return kExitDomain;
    } else if (mc_rho->parsed()) {
      const auto p = io::poset_from_json(detail::load_json(in_path), in_path);
      const auto r = rho_embedding(p);
      io::json image = io::json::object();
      for (std::size_t x = 0; x < p.size(); ++x) image[p.label(x)] = io::detail::sorted_ids(r.image[x].members());
      detail::print_json(out, {{"discrete", is_antichain(p)},
                               {"image", image},
                               {"image_open", image_is_open(r)},
                               {"order_embedding", is_order_embedding(p, r)}});
    } else if (hom->parsed()) {
      HomologyOptions opts;
      opts.parallel = parallel;
      detail::print_json(out, io::homology_to_json(homology(io::complex_from_json(detail::load_json(in_path), in_path), opts)));
    } else if (scan->parsed()) {
      std::vector<double> grid;
      std::stringstream ss(eps_list);
      std::string cell;
      while (std::getline(ss, cell, ',')) {
        auto v = finitetop::detail::parse_number(finitetop::detail::trim(cell));
        if (!v) throw DomainError("--eps: '" + cell + "' is not a number");
        grid.push_back(*v);
      }
      const auto m = detail::load_metric(points_path, metric, strict_triangle);
      ShapeOptions opts;
      opts.tol = tol;
      opts.parallel = parallel;
      const auto report = shape_scan(m, grid, opts);
      if (!dot_dir.empty())
        for (std::size_t i = 0; i < report.stages.size(); ++i) {
          const auto path = std::filesystem::path(dot_dir) / ("stage_" + std::to_string(i) + ".dot");
          std::ofstream f(path);
          if (!f) throw DomainError("--dot-dir: cannot write '" + path.string() + "'");
          f << to_dot(report.stages[i], "stage_" + std::to_string(i));
        }
      detail::print_json(out, io::shape_report_to_json(report));
    }
  } catch (const ResourceError& e) {
    err << "finitetop: resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const DomainError& e) {
    err << "finitetop: error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const nlohmann::json::exception& e) {
    err << "finitetop: error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::bad_alloc&) {
    err << "finitetop: resource limit: out of memory\n";
    return kExitResource;
  }
  return kExitOk;
}

}  // namespace finitetop::cli
