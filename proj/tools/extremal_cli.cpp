// Command-line front end: load matrices and spectrahedra, run extremality
// tests and solvers, emit machine-readable reports on stdout (JSON by
// default, CSV as a lossy projection of the scalar fields).
//
// Exit codes: 0 success, 1 usage/IO error, 2 domain error (infeasible
// point, not PSD, invalid correlation matrix, ...).

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <iostream>

#include "extremal/json_io.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace extremal;

struct GlobalOpts {
  double tol = 1e-8;
  std::optional<double> rank_tol;
  std::uint64_t seed = 0;
  std::string field = "real";
  std::string format = "json";
  std::string out;
};

Field parse_field(const std::string& s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw CLI::ValidationError("--field must be real or complex");
}

Tolerances make_tol(const GlobalOpts& g) {
  Tolerances t;
  t.feas = g.tol;
  t.rank_tol_p = g.rank_tol;
  t.rank_tol_gram = g.rank_tol;
  return t;
}

json make_manifest(const std::string& command, const std::vector<std::string>& inputs,
                   const GlobalOpts& g, double seconds) {
  json m{{"command", command},
         {"inputs", inputs},
         {"tol", g.tol},
         {"seed", g.seed},
         {"field", g.field},
         {"version", kVersion},
         {"duration_seconds", seconds}};
  if (g.rank_tol) m["rank_tol"] = *g.rank_tol;
  return m;
}

void flatten_csv(const json& j, const std::string& prefix, std::string& header,
                 std::string& row) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      flatten_csv(*it, key, header, row);
    } else if (it->is_primitive()) {
      if (!header.empty()) {
        header += ",";
        row += ",";
      }
      header += key;
      row += it->dump();
    }
    // arrays and matrices are dropped; CSV is a lossy projection
  }
}

void emit(const json& report, const GlobalOpts& g) {
  std::string text;
  if (g.format == "csv") {
    std::string header, row;
    flatten_csv(report, "", header, row);
    text = header + "\n" + row + "\n";
  } else {
    text = report.dump(2) + "\n";
  }
  if (!g.out.empty())
    write_json_file(g.out, report);  // file output is always the full JSON
  std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extreme points of spectrahedra: tests, witnesses and low-rank solvers"};
  app.require_subcommand(1);
  app.fallthrough(true);  // accept the global options after the subcommand too
  app.set_version_flag(
      "--version",
      std::string("extremal ") + kVersion +
          "\ndefaults: tol=1e-8, rank threshold=n*eps*sigma_max, witness norm=1/2");

  GlobalOpts g;
  app.add_option("--tol", g.tol, "feasibility / PSD tolerance")->capture_default_str();
  app.add_option("--rank-tol", g.rank_tol, "rank threshold override (P and Gram)");
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--field", g.field, "scalar field: real|complex")->capture_default_str();
  app.add_option("--format", g.format, "output format: json|csv")->capture_default_str();
  app.add_option("--out", g.out, "also write the JSON report to this path");

  std::string spec_path, point_path, h_path, problem_path;
  int n_constraints = 0, n = 3, target_rank = 1, rank_bound = 0, basis_size = 8;
  int instances = 1000, max_dim = 8, restarts = 8, max_iters = 400;
  double step = 0.5, m1 = 0.5, m2 = 1.0 / 3.0, m3 = 0.25;
  bool serial = false;

  auto* check = app.add_subcommand("check-extreme", "rank-based extremality test");
  check->add_option("--spectrahedron", spec_path)->required();
  check->add_option("--point", point_path)->required();

  auto* facial = app.add_subcommand("facial-dim", "facial dimension of a feasible point");
  facial->add_option("--spectrahedron", spec_path)->required();
  facial->add_option("--point", point_path)->required();

  auto* perturb = app.add_subcommand("perturb", "search for an even-perturbation witness");
  perturb->add_option("--spectrahedron", spec_path)->required();
  perturb->add_option("--point", point_path)->required();

  auto* douglas = app.add_subcommand("douglas-factor", "solve H = sqrt(P) X sqrt(P) for X");
  douglas->add_option("--point", point_path, "P")->required();
  douglas->add_option("--perturbation", h_path, "H")->required();

  auto* ell = app.add_subcommand("elliptope-check",
                                 "correlation-matrix extremality via the Hadamard square");
  ell->add_option("--point", point_path)->required();

  auto* had = app.add_subcommand("hadamard-check", "Hadamard rank inequality and equality case");
  had->add_option("--point", point_path, "PSD matrix A")->required();

  auto* randc = app.add_subcommand("random-correlation", "sample a rank-bounded correlation matrix");
  randc->add_option("--n", n)->required();
  randc->add_option("--rank", target_rank)->required();

  auto* bp = app.add_subcommand("bp-bound", "Barvinok-Pataki rank bound");
  bp->add_option("--constraints", n_constraints)->required();

  auto* lam = app.add_subcommand("solve-lambda1", "maximize lambda_1 over a spectrahedron");
  lam->add_option("--spectrahedron", spec_path);
  lam->add_option("--problem", problem_path, "interval-cover study definition JSON");
  lam->add_option("--rank-bound", rank_bound, "0 = derive from the problem");
  lam->add_option("--restarts", restarts)->capture_default_str();
  lam->add_option("--max-iters", max_iters)->capture_default_str();
  lam->add_option("--step", step)->capture_default_str();

  auto* ent = app.add_subcommand("solve-entropy", "minimize von Neumann entropy, rank-2 ansatz");
  ent->add_option("--problem", problem_path, "moment study definition JSON");
  ent->add_option("--m1", m1)->capture_default_str();
  ent->add_option("--m2", m2)->capture_default_str();
  ent->add_option("--m3", m3)->capture_default_str();
  ent->add_option("--basis-size", basis_size)->capture_default_str();
  ent->add_option("--restarts", restarts)->capture_default_str();
  ent->add_option("--max-iters", max_iters)->capture_default_str();

  auto* oracle = app.add_subcommand("oracle-compare",
                                    "batch equivalence of the rank test and the witness search");
  oracle->add_option("--instances", instances)->capture_default_str();
  oracle->add_option("--max-dim", max_dim)->capture_default_str();
  oracle->add_flag("--serial", serial, "disable the OpenMP fan-out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // normalize CLI11's per-error codes: 0 for --help/--version, 1 otherwise
    return app.exit(e) == 0 ? 0 : 1;
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  try {
    const Tolerances tol = make_tol(g);
    json report;
    std::string cmd;
    std::vector<std::string> inputs;

    if (check->parsed() || facial->parsed()) {
      cmd = check->parsed() ? "check-extreme" : "facial-dim";
      inputs = {spec_path, point_path};
      Spectrahedron c = spectrahedron_from_json(load_json_file(spec_path));
      HermitianMatrix p = matrix_from_json(load_json_file(point_path));
      report = extremality_report_to_json(extremality_rank_test(p, c, tol));
    } else if (perturb->parsed()) {
      cmd = "perturb";
      inputs = {spec_path, point_path};
      Spectrahedron c = spectrahedron_from_json(load_json_file(spec_path));
      HermitianMatrix p = matrix_from_json(load_json_file(point_path));
      auto w = find_even_perturbation(p, c, tol);
      report["witness_found"] = w.has_value();
      if (w) report["witness"] = witness_to_json(*w);
    } else if (douglas->parsed()) {
      cmd = "douglas-factor";
      inputs = {point_path, h_path};
      HermitianMatrix p = matrix_from_json(load_json_file(point_path));
      HermitianMatrix h = matrix_from_json(load_json_file(h_path));
      HermitianMatrix x = douglas_factor(p, h, g.tol);
      report["X"] = matrix_to_json(x);
      report["reconstruction_error"] =
          (psd_power(p, 0.5, g.tol).entries() * x.entries() *
               psd_power(p, 0.5, g.tol).entries() -
           h.entries())
              .norm();
    } else if (ell->parsed()) {
      cmd = "elliptope-check";
      inputs = {point_path};
      HermitianMatrix p = matrix_from_json(load_json_file(point_path));
      CorrelationMatrix corr(p, g.tol);
      report = extremality_report_to_json(
          elliptope_extreme_test(corr, parse_field(g.field), tol));
      report["specialized_path"] = "hadamard_square";
    } else if (had->parsed()) {
      cmd = "hadamard-check";
      inputs = {point_path};
      HermitianMatrix a = matrix_from_json(load_json_file(point_path));
      HadamardRankCheck hc = hadamard_inequality_check(a, parse_field(g.field), tol);
      report = json{{"rank_A", hc.rank_a},
                    {"lhs_rank", hc.lhs_rank},
                    {"rhs_bound", hc.rhs_bound},
                    {"real_bound", hc.real_bound},
                    {"equality", hc.equality},
                    {"extreme_in_diagonal_spectrahedron",
                     hc.extreme_in_diagonal_spectrahedron}};
    } else if (randc->parsed()) {
      cmd = "random-correlation";
      CorrelationMatrix p = random_correlation(n, target_rank, parse_field(g.field), g.seed);
      report["matrix"] = matrix_to_json(p.matrix());
      report["rank"] = numerical_rank(p.matrix()).rank;
    } else if (bp->parsed()) {
      cmd = "bp-bound";
      report["max_rank"] = bp_rank_bound(n_constraints, parse_field(g.field));
    } else if (lam->parsed()) {
      cmd = "solve-lambda1";
      SolveOptions opts{restarts, max_iters, step, g.seed, g.tol};
      std::optional<Spectrahedron> c;
      if (!problem_path.empty()) {
        inputs = {problem_path};
        json prob = load_json_file(problem_path);
        std::vector<Interval> intervals;
        for (const auto& iv : prob.at("intervals"))
          intervals.emplace_back(iv.at(0).get<double>(), iv.at(1).get<double>());
        const int p_funcs = prob.at("p").get<int>();
        IntervalCoverBasis basis = build_cover_basis(intervals, p_funcs);
        MomentMap moments;
        for (const auto& mj : prob.at("moments"))
          moments[{mj.at("j").get<int>(), mj.at("k").get<int>(), mj.at("l").get<int>()}] =
              mj.at("value").get<double>();
        c = pca_cover_constraints(basis, prob.at("trace").get<double>(), moments);
        double r_real = pca_rank_bound(static_cast<int>(intervals.size()), p_funcs);
        report["paper_rank_bound"] = r_real;
        if (rank_bound == 0) rank_bound = static_cast<int>(std::floor(r_real));
      } else if (!spec_path.empty()) {
        inputs = {spec_path};
        c = spectrahedron_from_json(load_json_file(spec_path));
        if (rank_bound == 0)
          rank_bound = std::max(1, bp_rank_bound(c->n_constraints(), c->field()));
      } else {
        throw CLI::ValidationError("solve-lambda1 needs --spectrahedron or --problem");
      }
      SolveResult r = max_lambda1_lowrank(*c, rank_bound, opts);
      report["result"] = solve_result_to_json(r);
      report["rank_bound"] = rank_bound;
      report["objective_is"] = "lower bound on max lambda_1";
    } else if (ent->parsed()) {
      cmd = "solve-entropy";
      if (!problem_path.empty()) {
        inputs = {problem_path};
        json prob = load_json_file(problem_path);
        m1 = prob.at("moments").at(0).get<double>();
        m2 = prob.at("moments").at(1).get<double>();
        m3 = prob.at("moments").at(2).get<double>();
        if (prob.contains("basis_size")) basis_size = prob.at("basis_size").get<int>();
      }
      SolveOptions opts{restarts, max_iters, step, g.seed, g.tol};
      EntropyResult r = min_entropy_rank2(m1, m2, m3, basis_size, opts);
      report["result"] = solve_result_to_json(r.solve);
      report["alpha"] = r.alpha;
      report["entropy"] = r.solve.objective;
      report["psi"] = std::vector<double>(r.psi.begin(), r.psi.end());
      report["phi"] = std::vector<double>(r.phi.begin(), r.phi.end());
    } else if (oracle->parsed()) {
      cmd = "oracle-compare";
      OracleCompareOptions opts;
      opts.instances = instances;
      opts.max_dim = max_dim;
      opts.seed = g.seed;
      opts.parallel = !serial;
      opts.tol = tol;
      report = oracle_compare_to_json(run_oracle_compare(opts));
    }

    report["manifest"] = make_manifest(cmd, inputs, g, elapsed());
    emit(report, g);
    return 0;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
