// Command-line frontend: solve, check, sweep, bench, generate.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gave/bench.hpp"
#include "gave/convergence.hpp"
#include "gave/matrix_market.hpp"
#include "gave/oracle.hpp"
#include "gave/problems.hpp"
#include "gave/solvers.hpp"

namespace {

using namespace gave;

struct ProblemSource {
  std::string example_spec;  // "m=20" or "m=20,block=20"
  std::string a_path, b_path, c_path, xstar_path;
  std::uint64_t seed = 1;
  std::size_t random_n = 0;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--example", example_spec,
                    "Generated benchmark family instance, e.g. m=20 or "
                    "m=20,block=20");
    cmd->add_option("--random-n", random_n,
                    "Random Picard-certified instance of this size");
    cmd->add_option("--seed", seed, "Seed for --random-n (default 1)");
    cmd->add_option("--a", a_path, "Matrix Market file for A");
    cmd->add_option("--b", b_path, "Matrix Market file for B");
    cmd->add_option("--c", c_path, "Matrix Market file for c");
    cmd->add_option("--xstar", xstar_path,
                    "Optional Matrix Market file with a known solution");
  }

  static std::pair<std::size_t, std::size_t> parse_example(
      const std::string& spec) {
    std::size_t m = 0, block = 0;
    std::stringstream ss(spec);
    std::string kv;
    while (std::getline(ss, kv, ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw InvalidArgument("--example expects k=v pairs, got '" + kv + "'");
      std::string key = kv.substr(0, eq);
      std::size_t value = std::stoul(kv.substr(eq + 1));
      if (key == "m")
        m = value;
      else if (key == "block" || key == "block_rows")
        block = value;
      else
        throw InvalidArgument("--example: unknown key '" + key + "'");
    }
    if (m == 0) throw InvalidArgument("--example requires m=<size>");
    return {m, block};
  }

  GaveProblem load(bool need_c = true) const {
    const bool from_example = !example_spec.empty();
    const bool from_files = !a_path.empty() || !b_path.empty() ||
                            !c_path.empty();
    const bool from_random = random_n > 0;
    if (from_example + from_files + from_random != 1)
      throw InvalidArgument(
          "exactly one problem source required (--example, --random-n, or "
          "--a/--b/--c)");
    if (from_example) {
      auto [m, block] = parse_example(example_spec);
      return example_4_1(m, block);
    }
    if (from_random) return random_problem(random_n, seed);
    if (a_path.empty() || b_path.empty() || (need_c && c_path.empty()))
      throw InvalidArgument(need_c ? "--a, --b and --c must all be given"
                                   : "--a and --b must both be given");
    GaveProblem p;
    p.a = read_matrix(a_path);
    p.b = read_matrix(b_path);
    p.c = c_path.empty() ? Vector(p.a.rows(), 0.0) : read_vector(c_path);
    if (!xstar_path.empty()) p.x_star = read_vector(xstar_path);
    p.label = a_path;
    return p;
  }
};

struct MethodFlags {
  std::string method = "gnms";
  double tau = 1.0;
  double theta = 1.0;
  std::string omega = "zero";
  double q1_scale = 10.0;
  double q2_scale = 0.5;
  double lower_coeff = 0.75;

  void add_options(CLI::App* cmd, bool require_method) {
    auto* opt = cmd->add_option(
        "--method", method,
        "gnms|mn|picard|fpi|nms|ngs|rms|ssmn|rmn|rnms");
    if (require_method) opt->required();
    cmd->add_option("--tau", tau, "Relaxation weight (default 1)");
    cmd->add_option("--theta", theta, "Relaxation factor for rmn/rnms");
    cmd->add_option("--omega", omega, "Shift choice: 2diag|0.5diag|zero");
    cmd->add_option("--q1-scale", q1_scale,
                    "Q1 = q1-scale * I for gnms (default 10)");
    cmd->add_option("--q2-scale", q2_scale,
                    "Q2 = q2-scale * I for gnms (default 0.5)");
    cmd->add_option("--lower-coeff", lower_coeff,
                    "Coefficient on L in the triangular splitting "
                    "(default 0.75)");
  }

  Matrix omega_matrix(const Matrix& a) const {
    if (omega == "2diag") return omega_twice_diag(a);
    if (omega == "0.5diag") return omega_half_diag(a);
    if (omega == "zero" || omega.empty())
      return Matrix::banded(a.rows(), 0, 0);
    throw InvalidArgument("unknown --omega '" + omega + "'");
  }

  Splitting q_split(std::size_t n) const {
    return Splitting(scale(Matrix::identity(n), q1_scale),
                     scale(Matrix::identity(n), q2_scale),
                     SolveStrategy::Diagonal);
  }

  MethodPreset preset(const GaveProblem& p) const {
    const Matrix& a = p.a;
    if (method == "gnms")
      return preset_gnms(a, gnms_paper_splitting(a, lower_coeff),
                         q_split(a.rows()), tau);
    if (method == "mn") return preset_mn(a, omega_matrix(a));
    if (method == "picard") return preset_picard(a);
    if (method == "fpi") return preset_fpi(a, tau);
    if (method == "nms")
      return preset_nms(a, gnms_paper_splitting(a, lower_coeff),
                        omega_matrix(a));
    if (method == "ngs") return preset_ngs(a, omega_matrix(a));
    if (method == "rms")
      return preset_rms(gnms_paper_splitting(a, lower_coeff), tau);
    if (method == "ssmn") return preset_ssmn(a, omega_matrix(a));
    if (method == "rmn") return preset_rmn(a, theta, omega_matrix(a));
    if (method == "rnms")
      return preset_rnms(gnms_paper_splitting(a, lower_coeff), theta,
                         omega_matrix(a));
    throw InvalidArgument("unknown --method '" + method + "'");
  }
};

int cmd_solve(const ProblemSource& source, const MethodFlags& flags,
              double tol, std::size_t max_iter, bool history, bool json) {
  GaveProblem problem = source.load();
  MethodPreset preset = flags.preset(problem);
  SolveReport report = preset.run(problem.b, problem.c, tol, max_iter);

  if (json) {
    nlohmann::json j;
    j["method"] = flags.method;
    j["n"] = problem.size();
    j["termination"] = termination_name(report.termination);
    j["iterations"] = report.iterations;
    j["res"] = report.final_residual();
    j["residual_is_absolute"] = report.residual_is_absolute;
    j["wall_time_s"] = report.wall_time_seconds;
    if (history) j["residual_history"] = report.residual_history;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "method: " << flags.method << "\n";
    std::cout << "n: " << problem.size() << "\n";
    std::cout << "termination: " << termination_name(report.termination)
              << "\n";
    std::cout << "iterations: " << report.iterations << "\n";
    std::printf("res: %.4e\n", report.final_residual());
    std::printf("wall_time_s: %.6f\n", report.wall_time_seconds);
    if (history)
      for (std::size_t k = 0; k < report.residual_history.size(); ++k)
        std::printf("res[%zu]: %.6e\n", k, report.residual_history[k]);
  }

  switch (report.termination) {
    case Termination::Converged: return 0;
    case Termination::MaxIter: return 2;
    case Termination::Diverged: return 3;
  }
  return 1;
}

int cmd_check(const ProblemSource& source, const MethodFlags& flags,
              const std::string& condition, bool tau_given, bool json) {
  GaveProblem problem = source.load(/*need_c=*/false);
  const Matrix& a = problem.a;
  const Matrix& b = problem.b;

  Certificate cert;
  if (condition == "picard-norm") {
    cert = check_picard(a, b);
  } else if (condition == "picard-rho") {
    cert = check_picard_rho(a, b);
  } else if (condition == "mn") {
    cert = check_mn(a, b, flags.omega_matrix(a));
  } else if (condition == "mn-old") {
    cert = check_mn_old(a, b, flags.omega_matrix(a));
  } else if (condition == "nms") {
    cert = check_nms(gnms_paper_splitting(a, flags.lower_coeff), b,
                     flags.omega_matrix(a));
  } else if (condition == "nms-old") {
    cert = check_nms_old(gnms_paper_splitting(a, flags.lower_coeff), b,
                         flags.omega_matrix(a));
  } else if (condition == "rnms") {
    cert = check_rnms(gnms_paper_splitting(a, flags.lower_coeff), flags.theta,
                      flags.omega_matrix(a), b);
  } else if (condition == "rnms-old") {
    cert = check_rnms_old(gnms_paper_splitting(a, flags.lower_coeff),
                          flags.theta, flags.omega_matrix(a), b);
  } else if (condition == "theorem-3-1" || condition == "corollary-3-2") {
    if (!tau_given)
      throw InvalidArgument("--condition " + condition +
                            " requires the splitting flags (--tau at least)");
    ConvergenceScalars s = compute_scalars(
        gnms_paper_splitting(a, flags.lower_coeff),
        flags.q_split(a.rows()), b, flags.tau);
    cert = condition == "theorem-3-1" ? check_theorem_3_1(s)
                                      : check_corollary_3_2(s);
  } else {
    throw InvalidArgument("unknown --condition '" + condition + "'");
  }

  if (json) {
    std::cout << certificate_to_json(cert) << "\n";
  } else {
    std::cout << "condition: " << cert.condition_name << "\n";
    std::cout << "holds: " << (cert.holds ? "true" : "false") << "\n";
    std::printf("margin: %.6g\n", cert.margin);
    for (const Inequality& part : cert.details)
      std::printf("  %s: lhs=%.6g rhs=%.6g margin=%.6g %s\n",
                  part.name.c_str(), part.lhs, part.rhs, part.margin(),
                  part.holds() ? "ok" : "violated");
  }
  return cert.holds ? 0 : 4;
}

int cmd_sweep(const ProblemSource& source, const MethodFlags& flags,
              double tol, std::size_t max_iter, int repetitions) {
  GaveProblem problem = source.load();
  MethodSpec spec;
  if (flags.method == "gnms")
    spec = {Method::Gnms, OmegaChoice::None, true, 1.0};
  else if (flags.method == "fpi")
    spec = {Method::Fpi, OmegaChoice::None, true, 1.0};
  else if (flags.method == "rms")
    spec = {Method::Rms, OmegaChoice::None, true, 1.0};
  else
    throw InvalidArgument("sweep supports --method gnms|fpi|rms");

  BenchPlan plan;
  plan.tol = tol;
  plan.max_iter = max_iter;
  plan.repetitions = repetitions;
  auto [tau_opt, row] = sweep_tau(plan, spec, problem, problem.size());
  std::printf("method: %s\n", row.method.c_str());
  std::printf("tau_opt: %.2f\n", tau_opt);
  std::printf("iterations: %.0f\n", row.mean_iterations);
  std::printf("res: %.4e\n", row.mean_res);
  return 0;
}

int cmd_bench(const std::string& example_spec, const std::string& format,
              double tol, std::size_t max_iter, int repetitions) {
  auto [m, block] = ProblemSource::parse_example(example_spec);
  BenchPlan plan;
  plan.ms = {m};
  plan.block_rows = block;
  plan.tol = tol;
  plan.max_iter = max_iter;
  plan.repetitions = repetitions;

  TableFormat fmt;
  if (format == "csv")
    fmt = TableFormat::Csv;
  else if (format == "json")
    fmt = TableFormat::Json;
  else if (format == "text")
    fmt = TableFormat::Text;
  else
    throw InvalidArgument("unknown --format '" + format + "'");

  std::cout << emit_table(run_table(plan), fmt);
  return 0;
}

int cmd_generate(const ProblemSource& source, const std::string& out_dir,
                 bool with_solution) {
  GaveProblem problem = source.load();
  namespace fs = std::filesystem;
  fs::path manifest = fs::path(out_dir) / "problem.manifest";
  save_problem(problem, manifest, with_solution);
  std::cout << "wrote " << manifest.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers, convergence certificates and benchmarks for "
               "generalized absolute value equations A x - B|x| = c"};
  app.require_subcommand(1);

  double tol = kDefaultTol;
  std::size_t max_iter = kDefaultMaxIter;
  bool history = false;
  bool json = false;
  int repetitions = 10;
  std::string condition;
  std::string format = "text";
  std::string out_dir;
  bool with_solution = false;

  ProblemSource solve_src, check_src, sweep_src, gen_src;
  MethodFlags solve_flags, check_flags, sweep_flags;
  std::string bench_example;

  CLI::App* solve = app.add_subcommand("solve", "Run one method instance");
  solve_src.add_options(solve);
  solve_flags.add_options(solve, /*require_method=*/true);
  solve->add_option("--tol", tol, "Stopping residual (default 1e-8)");
  solve->add_option("--max-iter", max_iter, "Iteration cap (default 10000)");
  solve->add_flag("--history", history, "Print the residual history");
  solve->add_flag("--json", json, "Emit JSON");

  CLI::App* check =
      app.add_subcommand("check", "Evaluate a convergence condition");
  check_src.add_options(check);
  check_flags.add_options(check, /*require_method=*/false);
  check->add_option("--condition", condition,
                    "picard-norm|picard-rho|mn|mn-old|nms|nms-old|rnms|"
                    "rnms-old|theorem-3-1|corollary-3-2")
      ->required();
  check->add_flag("--json", json, "Emit JSON");

  CLI::App* sweep =
      app.add_subcommand("sweep", "Scan the tau grid for a method");
  sweep_src.add_options(sweep);
  sweep_flags.add_options(sweep, /*require_method=*/true);
  sweep->add_option("--tol", tol, "Stopping residual (default 1e-8)");
  sweep->add_option("--max-iter", max_iter, "Iteration cap (default 10000)");
  sweep->add_option("--repetitions", repetitions,
                    "Timing repetitions (default 10)");

  CLI::App* bench =
      app.add_subcommand("bench", "Run the full method table on one instance");
  bench->add_option("--example", bench_example, "Instance, e.g. m=20")
      ->required();
  bench->add_option("--format", format, "csv|json|text (default text)");
  bench->add_option("--tol", tol, "Stopping residual (default 1e-8)");
  bench->add_option("--max-iter", max_iter, "Iteration cap (default 10000)");
  bench->add_option("--repetitions", repetitions,
                    "Timing repetitions (default 10)");

  CLI::App* generate =
      app.add_subcommand("generate", "Write a problem to Matrix Market files");
  gen_src.add_options(generate);
  generate->add_option("--out", out_dir, "Output directory")->required();
  generate->add_flag("--with-solution", with_solution,
                     "Also write the known solution when present");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    if (solve->parsed())
      return cmd_solve(solve_src, solve_flags, tol, max_iter, history, json);
    if (check->parsed())
      return cmd_check(check_src, check_flags, condition,
                       check->count("--tau") > 0, json);
    if (sweep->parsed())
      return cmd_sweep(sweep_src, sweep_flags, tol, max_iter, repetitions);
    if (bench->parsed())
      return cmd_bench(bench_example, format, tol, max_iter, repetitions);
    if (generate->parsed())
      return cmd_generate(gen_src, out_dir, with_solution);
  } catch (const gave::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gave::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
