#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "toric/io.hpp"

using namespace toric;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

// exit codes: 0 success/verified, 1 operational error, 2 violations found,
// 3 region construction failure
constexpr int kOk = 0, kError = 1, kViolations = 2, kRegionFailure = 3;

struct GlobalOpts {
  double tolerance = 1e-9;
  bool rational = false;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TORICNET_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw std::invalid_argument("TORICNET_SEED is not an unsigned integer");
    }
  }
  return 0;
}

json base_report(const std::string& command, const GlobalOpts& g) {
  json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["config"] = {{"tolerance", g.tolerance},
                 {"rational", g.rational},
                 {"output_dir", g.output_dir},
                 {"seed", g.seed}};
  return j;
}

std::chrono::steady_clock::time_point g_start;

void emit(json report, const GlobalOpts& g, const std::string& name) {
  // timing is omitted in rational mode so reruns are bit-identical
  if (!g.rational)
    report["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start).count();
  fs::create_directories(g.output_dir);
  fs::path path = fs::path(g.output_dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report to " + path.string());
  out << report.dump(2) << "\n";
}

std::string qvec_str(const QVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

Eigen::VectorXd parse_point(const std::string& text, int n) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
  if ((int)vals.size() != n)
    throw std::invalid_argument("expected " + std::to_string(n) + " comma-separated values");
  return Eigen::Map<Eigen::VectorXd>(vals.data(), n);
}

ScheduleKind parse_kind(const std::string& s) {
  if (s == "constant") return ScheduleKind::constant;
  if (s == "piecewise") return ScheduleKind::piecewise_constant;
  if (s == "sinusoidal") return ScheduleKind::sinusoidal;
  if (s == "corner") return ScheduleKind::corner_adversarial;
  throw std::invalid_argument("unknown schedule kind '" + s + "'");
}

int cmd_check(const std::string& file, const GlobalOpts& g) {
  NetworkDocument doc = parse_network_file(file);
  EGraph graph = doc.to_graph();
  auto comps = scc_components(graph);
  int num_sccs = comps.empty() ? 0 : 1 + *std::max_element(comps.begin(), comps.end());
  auto [S, Sperp] = edge_space(graph);

  json rep = base_report("check", g);
  rep["input"] = file;
  rep["dimension"] = graph.n;
  rep["vertices"] = graph.vertices.size();
  rep["edges"] = graph.edges.size();
  rep["reversible"] = is_reversible(graph);
  rep["weakly_reversible"] = is_weakly_reversible(graph);
  rep["strongly_connected_components"] = num_sccs;
  rep["edge_space_dimension"] = S.size();
  json basis = json::array();
  for (const auto& c : Sperp) {
    json cv = json::array();
    for (const auto& q : c) cv.push_back(to_string(q));
    basis.push_back(cv);
  }
  rep["conservation_basis"] = basis;
  emit(rep, g, "check.json");

  std::cout << "network: " << graph.vertices.size() << " vertices, " << graph.edges.size()
            << " edges in dimension " << graph.n << "\n"
            << "reversible: " << (is_reversible(graph) ? "yes" : "no") << "\n"
            << "weakly reversible: " << (is_weakly_reversible(graph) ? "yes" : "no") << "\n"
            << "strongly connected components: " << num_sccs << "\n"
            << "edge space dimension: " << S.size() << ", conservation laws: " << Sperp.size()
            << "\n";
  return kOk;
}

int cmd_build_inclusion(const std::string& file, double eps, const GlobalOpts& g) {
  NetworkDocument doc = parse_network_file(file);
  EGraph graph = doc.to_graph();
  if (!is_weakly_reversible(graph)) {
    for (size_t e = 0; e < graph.edges.size(); ++e) {
      auto comps = scc_components(graph);
      if (comps[graph.edges[e].first] != comps[graph.edges[e].second])
        throw std::invalid_argument(
            "network is not weakly reversible: edge " + doc.edges[e].from + " -> " +
            doc.edges[e].to + " lies on no directed cycle");
    }
    throw std::invalid_argument("network is not weakly reversible");
  }
  ToricInclusion ti = build_weakly_reversible(graph, eps);

  json rep = base_report("build-inclusion", g);
  rep["input"] = file;
  rep["config"]["epsilon"] = eps;
  rep["inclusion"] = inclusion_to_json(ti);
  emit(rep, g, "inclusion.json");

  std::cout << "hyperplanes: " << ti.fan->num_hyperplanes() << "\n"
            << "delta: " << ti.delta << "\n"
            << "fan cones: " << ti.fan->realizable().size() << "\n";
  for (const auto& d : ti.fan->normal_dirs()) std::cout << "  normal " << qvec_str(d) << "\n";
  return kOk;
}

int cmd_verify(const std::string& file, double eps, std::uint64_t samples,
               const std::string& mode, bool allow_counterexample, const GlobalOpts& g) {
  NetworkDocument doc = parse_network_file(file);
  EGraph graph = doc.to_graph();
  SamplerOptions opt;
  opt.samples = samples;
  opt.seed = g.seed;
  opt.tol = g.tolerance;
  Semantics sem = mode == "strict" ? Semantics::strict : Semantics::hyperplane;
  if (mode != "strict" && mode != "hyperplane")
    throw std::invalid_argument("mode must be 'hyperplane' or 'strict'");

  EmbeddingReport report;
  if (is_weakly_reversible(graph)) {
    report = verify_embedding(graph, eps, sem, opt);
  } else if (allow_counterexample) {
    report = counterexample_search(graph, eps, opt);
  } else {
    throw std::invalid_argument(
        "network is not weakly reversible; pass --allow-counterexample to search for "
        "violations anyway");
  }

  json rep = base_report("verify", g);
  rep["input"] = file;
  rep["config"]["epsilon"] = eps;
  rep["config"]["samples"] = samples;
  rep["config"]["mode"] = mode;
  rep["report"] = embedding_report_to_json(report);
  emit(rep, g, "verify.json");

  std::cout << "samples: " << report.samples << "\n"
            << "violations: " << report.violations << "\n"
            << "max residual: " << report.max_residual << "\n"
            << "delta: " << report.delta << "\n";
  if (report.violations > 0) {
    std::cout << "first witnesses written to verify.json\n";
    return kViolations;
  }
  return kOk;
}

int cmd_simulate(const std::string& file, double eps, const std::string& kind_str,
                 const std::string& x0_str, double horizon, const GlobalOpts& g) {
  NetworkDocument doc = parse_network_file(file);
  EGraph graph = doc.to_graph();
  RateSchedule sched = sample_schedule(graph, eps, parse_kind(kind_str), g.seed);
  Eigen::VectorXd x0 = parse_point(x0_str, graph.n);
  Trajectory traj = simulate(graph, sched, x0, horizon);

  fs::create_directories(g.output_dir);
  fs::path csv_path = fs::path(g.output_dir) / "trajectory.csv";
  std::ofstream csv(csv_path);
  write_trajectory_csv(csv, traj);

  double max_res = 0;
  for (double r : traj.conservation_residual) max_res = std::max(max_res, r);
  json rep = base_report("simulate", g);
  rep["input"] = file;
  rep["config"]["epsilon"] = eps;
  rep["config"]["schedule"] = kind_str;
  rep["config"]["horizon"] = horizon;
  rep["steps_accepted"] = traj.accepted_steps;
  rep["steps_rejected"] = traj.rejected_steps;
  rep["samples"] = traj.times.size();
  rep["max_conservation_residual"] = max_res;
  rep["blow_up"] = traj.blow_up;
  if (traj.blow_up) rep["blow_up_time"] = traj.blow_up_time;
  rep["trajectory_csv"] = csv_path.string();
  emit(rep, g, "simulate.json");

  std::cout << "integrated to t=" << (traj.times.empty() ? 0.0 : traj.times.back()) << " in "
            << traj.accepted_steps << " accepted steps\n"
            << "max conservation residual: " << max_res << "\n"
            << "trajectory: " << csv_path.string() << "\n";
  if (traj.blow_up) {
    std::cout << "probable finite-time blow-up near t=" << traj.blow_up_time << "\n";
    return kError;
  }
  return kOk;
}

int cmd_equilibrium(const std::string& file, const GlobalOpts& g) {
  NetworkDocument doc = parse_network_file(file);
  EGraph graph = doc.to_graph();
  EquilibriumResult res = find_vertex_balanced(graph, doc.rates(), g.tolerance);

  json rep = base_report("equilibrium", g);
  rep["input"] = file;
  rep["result"] = equilibrium_to_json(res);
  emit(rep, g, "equilibrium.json");

  if (res.consistent) {
    std::cout << "vertex-balanced point: (";
    for (int i = 0; i < res.x_bar.size(); ++i) std::cout << (i ? "," : "") << res.x_bar[i];
    std::cout << ")\nbalanced: " << (res.balanced ? "yes" : "no") << "\n";
  } else {
    std::cout << "no vertex-balanced point: log-linear system inconsistent (residual "
              << res.ls_residual << ")\n";
  }
  return kOk;
}

int cmd_region(const std::string& file, double eps, double tau, double box,
               const std::string& out_name, const GlobalOpts& g) {
  NetworkDocument doc = parse_network_file(file);
  EGraph graph = doc.to_graph();
  if (graph.n != 2) throw std::invalid_argument("regions require dimension 2");
  if (!is_weakly_reversible(graph))
    throw std::invalid_argument("network is not weakly reversible");
  ToricInclusion ti = build_weakly_reversible(graph, eps);

  json rep = base_report("region", g);
  rep["input"] = file;
  rep["config"]["epsilon"] = eps;
  rep["config"]["tau"] = tau;
  rep["config"]["box"] = box;
  rep["delta"] = ti.delta;

  PolygonRegion region;
  try {
    region = build_region(ti, tau);
  } catch (const std::exception& e) {
    rep["error"] = e.what();
    emit(rep, g, "region.json");
    std::cout << "region construction failed: " << e.what() << "\n";
    return kRegionFailure;
  }
  RegionCertificate cert = verify_region(ti, region, g.tolerance < 1e-10 ? g.tolerance : 1e-10);

  json poly = json::array();
  for (const auto& v : region.vertices) poly.push_back({v.x(), v.y()});
  rep["polygon_log"] = poly;
  rep["tau"] = region.tau;
  rep["certificate"] = region_certificate_to_json(cert);

  fs::create_directories(g.output_dir);
  fs::path svg_path = fs::path(g.output_dir) / out_name;
  std::ofstream svg(svg_path);
  write_region_svg(svg, region.vertices, true, ti);
  rep["figure"] = svg_path.string();
  emit(rep, g, "region.json");

  std::cout << "polygon vertices: " << region.vertices.size() << " (tau=" << region.tau << ")\n"
            << "certificate max generator.normal: " << cert.max_value << "\n"
            << "verified: " << (cert.verified ? "yes" : "no") << "\n"
            << "figure: " << svg_path.string() << "\n";
  return cert.verified ? kOk : kRegionFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embedding toolkit for power-law networks and toric differential inclusions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  GlobalOpts g;
  try {
    g.seed = default_seed();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  app.add_option("--tolerance", g.tolerance, "numeric tolerance for residual checks");
  app.add_flag("--rational", g.rational, "prefer exact rational paths where available");
  app.add_option("--output-dir", g.output_dir, "directory for reports and figures");
  app.add_option("--seed", g.seed, "seed for all sampling (default: TORICNET_SEED or 0)");

  std::string file, mode = "hyperplane", kind = "constant", x0 = "", out_name = "region.svg";
  double eps = 0.1, horizon = 10.0, tau = 5.0, box = 20.0;
  std::uint64_t samples = 10000;
  bool allow_cx = false;

  auto* check = app.add_subcommand("check", "structural report for a network file");
  check->add_option("file", file, "network JSON file")->required();

  auto* build = app.add_subcommand("build-inclusion", "construct the toric differential inclusion");
  build->add_option("file", file)->required();
  build->add_option("--epsilon", eps, "rate bound in (0,1)");

  auto* verify = app.add_subcommand("verify", "sampled membership check of the embedding");
  verify->add_option("file", file)->required();
  verify->add_option("--epsilon", eps);
  verify->add_option("--samples", samples);
  verify->add_option("--mode", mode, "hyperplane or strict");
  verify->add_flag("--allow-counterexample", allow_cx,
                   "search for violations on non-weakly-reversible networks");

  auto* sim = app.add_subcommand("simulate", "integrate the variable-rate system");
  sim->add_option("file", file)->required();
  sim->add_option("--epsilon", eps);
  sim->add_option("--schedule", kind, "constant, piecewise, sinusoidal, or corner");
  sim->add_option("--x0", x0, "comma-separated initial point, e.g. 1,2")->required();
  sim->add_option("--horizon", horizon);

  auto* eq = app.add_subcommand("equilibrium", "find a vertex-balanced equilibrium");
  eq->add_option("file", file)->required();

  auto* region = app.add_subcommand("region", "build and verify a 2D invariant region");
  region->add_option("file", file)->required();
  region->add_option("--epsilon", eps);
  region->add_option("--tau", tau, "initial region scale in log coordinates");
  region->add_option("--box", box, "clipping box half-width");
  region->add_option("--out", out_name, "SVG file name");

  CLI11_PARSE(app, argc, argv);

  try {
    auto t0 = std::chrono::steady_clock::now();
    g_start = t0;
    int rc = kError;
    if (*check) rc = cmd_check(file, g);
    else if (*build) rc = cmd_build_inclusion(file, eps, g);
    else if (*verify) rc = cmd_verify(file, eps, samples, mode, allow_cx, g);
    else if (*sim) rc = cmd_simulate(file, eps, kind, x0, horizon, g);
    else if (*eq) rc = cmd_equilibrium(file, g);
    else if (*region) rc = cmd_region(file, eps, tau, box, out_name, g);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "done in " << dt << " s\n";
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
