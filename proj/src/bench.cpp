#include "gave/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "gave/parallel.hpp"

namespace gave {

namespace {

constexpr std::size_t kNoCount = std::numeric_limits<std::size_t>::max();

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

void atomic_min(std::atomic<std::size_t>& target, std::size_t value) {
  std::size_t cur = target.load();
  while (value < cur && !target.compare_exchange_weak(cur, value)) {
  }
}

BenchRow averaged_row(const MethodSpec& spec, const MethodPreset& preset,
                      const GaveProblem& problem, std::size_t m,
                      const BenchPlan& plan, std::optional<double> tau_opt) {
  BenchRow row;
  row.method = method_name(spec.method);
  row.params = spec.params_label();
  row.m = m;
  row.tau_opt = tau_opt;
  const int reps = std::max(plan.repetitions, 1);
  double cpu = 0.0;
  SolveReport report;
  for (int r = 0; r < reps; ++r) {
    report = preset.run(problem.b, problem.c, plan.tol, plan.max_iter);
    cpu += report.wall_time_seconds;
  }
  row.mean_iterations = static_cast<double>(report.iterations);
  row.mean_cpu_seconds = cpu / reps;
  row.mean_res = report.final_residual();
  row.converged = report.termination == Termination::Converged;
  return row;
}

}  // namespace

std::string omega_label(OmegaChoice c) {
  switch (c) {
    case OmegaChoice::None: return "";
    case OmegaChoice::TwiceDiag: return "omega=2diag";
    case OmegaChoice::HalfDiag: return "omega=0.5diag";
  }
  return "";
}

Matrix make_omega(OmegaChoice c, const Matrix& a) {
  switch (c) {
    case OmegaChoice::TwiceDiag: return omega_twice_diag(a);
    case OmegaChoice::HalfDiag: return omega_half_diag(a);
    case OmegaChoice::None: break;
  }
  return Matrix::banded(a.rows(), 0, 0);
}

std::string MethodSpec::params_label() const { return omega_label(omega); }

std::vector<MethodSpec> default_method_set() {
  return {
      {Method::Gnms, OmegaChoice::None, true, 1.0},
      {Method::Mn, OmegaChoice::TwiceDiag, false, 1.0},
      {Method::Mn, OmegaChoice::HalfDiag, false, 1.0},
      {Method::Picard, OmegaChoice::None, false, 1.0},
      {Method::Fpi, OmegaChoice::None, true, 1.0},
      {Method::Nms, OmegaChoice::TwiceDiag, false, 1.0},
      {Method::Nms, OmegaChoice::HalfDiag, false, 1.0},
      {Method::Ngs, OmegaChoice::TwiceDiag, false, 1.0},
      {Method::Ngs, OmegaChoice::HalfDiag, false, 1.0},
      {Method::Rms, OmegaChoice::None, true, 1.0},
      {Method::Ssmn, OmegaChoice::TwiceDiag, false, 1.0},
      {Method::Ssmn, OmegaChoice::HalfDiag, false, 1.0},
  };
}

MethodPreset build_preset(const MethodSpec& spec, const GaveProblem& problem,
                          double tau) {
  const Matrix& a = problem.a;
  switch (spec.method) {
    case Method::Gnms: {
      // lower-triangular splitting of A with the 10I / 0.5I transform
      Splitting a_split = gnms_paper_splitting(a);
      Splitting q_split(scale(Matrix::identity(a.rows()), 10.0),
                        scale(Matrix::identity(a.rows()), 0.5),
                        SolveStrategy::Diagonal);
      return preset_gnms(a, a_split, q_split, tau);
    }
    case Method::Mn:
      return preset_mn(a, make_omega(spec.omega, a));
    case Method::Picard:
      return preset_picard(a);
    case Method::Fpi:
      return preset_fpi(a, tau);
    case Method::Nms:
      return preset_nms(a, gnms_paper_splitting(a),
                        make_omega(spec.omega, a));
    case Method::Ngs:
      return preset_ngs(a, make_omega(spec.omega, a));
    case Method::Rms:
      return preset_rms(gnms_paper_splitting(a), tau);
    case Method::Ssmn:
      return preset_ssmn(a, make_omega(spec.omega, a));
    case Method::Rmn:
      return preset_rmn(a, 1.0, make_omega(spec.omega, a));
    case Method::Rnms:
      return preset_rnms(gnms_paper_splitting(a), 1.0,
                         make_omega(spec.omega, a));
  }
  throw Error("unreachable");
}

std::pair<double, BenchRow> sweep_tau(const BenchPlan& plan,
                                      const MethodSpec& spec,
                                      const GaveProblem& problem,
                                      std::size_t m) {
  if (!spec.sweep_tau)
    throw InvalidArgument("sweep_tau: method has no tau parameter");
  const std::size_t grid =
      static_cast<std::size_t>(std::llround(plan.tau_max / plan.tau_step));
  MethodPreset base = build_preset(spec, problem, 1.0);

  std::vector<std::size_t> counts(grid, kNoCount);
  std::atomic<std::size_t> best{plan.max_iter};
  parallel_for(grid, [&](std::size_t i) {
    const double tau = static_cast<double>(i + 1) * plan.tau_step;
    // a point that cannot converge in fewer iterations than the current
    // best (ties included) can be cut at that many iterations
    const std::size_t cap = std::min(plan.max_iter, best.load());
    SolveReport report =
        base.with_tau(tau).run(problem.b, problem.c, plan.tol, cap);
    if (report.termination == Termination::Converged) {
      counts[i] = report.iterations;
      atomic_min(best, report.iterations);
    }
  });

  std::size_t min_count = kNoCount;
  for (std::size_t c : counts) min_count = std::min(min_count, c);
  if (min_count == kNoCount)
    throw AllDiverged("sweep_tau: no grid point converged for " +
                      method_name(spec.method));
  std::size_t first = 0;
  while (counts[first] != min_count) ++first;
  const double tau_opt = static_cast<double>(first + 1) * plan.tau_step;

  BenchRow row = averaged_row(spec, build_preset(spec, problem, tau_opt),
                              problem, m, plan, tau_opt);
  return {tau_opt, row};
}

std::pair<double, BenchRow> sweep_tau(const BenchPlan& plan,
                                      const MethodSpec& spec) {
  if (plan.ms.empty()) throw InvalidArgument("sweep_tau: plan has no sizes");
  const std::size_t m = plan.ms.front();
  GaveProblem problem =
      example_4_1(m, plan.block_rows == 0 ? m : plan.block_rows);
  return sweep_tau(plan, spec, problem, m);
}

std::vector<BenchRow> run_table(const BenchPlan& plan) {
  std::vector<BenchRow> rows;
  const auto& methods =
      plan.methods.empty() ? default_method_set() : plan.methods;
  for (const MethodSpec& spec : methods) {
    for (std::size_t m : plan.ms) {
      try {
        GaveProblem problem =
            example_4_1(m, plan.block_rows == 0 ? m : plan.block_rows);
        if (spec.sweep_tau) {
          rows.push_back(sweep_tau(plan, spec, problem, m).second);
        } else {
          rows.push_back(averaged_row(
              spec, build_preset(spec, problem, spec.fixed_tau), problem, m,
              plan, std::nullopt));
        }
      } catch (const Error& e) {
        BenchRow row;
        row.method = method_name(spec.method);
        row.params = spec.params_label();
        row.m = m;
        row.failed = true;
        row.error = e.what();
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::string emit_table(const std::vector<BenchRow>& rows, TableFormat format) {
  switch (format) {
    case TableFormat::Csv: {
      std::ostringstream out;
      out << "method,params,m,tau_opt,it,cpu_s,res\n";
      for (const BenchRow& r : rows) {
        out << r.method << "," << r.params << "," << r.m << ",";
        if (r.tau_opt) out << fmt("%.17g", *r.tau_opt);
        out << ",";
        if (r.failed) {
          out << ",,\n";
          continue;
        }
        out << fmt("%.17g", r.mean_iterations) << ","
            << fmt("%.17g", r.mean_cpu_seconds) << ","
            << fmt("%.17g", r.mean_res) << "\n";
      }
      return out.str();
    }
    case TableFormat::Json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const BenchRow& r : rows) {
        nlohmann::json j;
        j["method"] = r.method;
        j["params"] = r.params;
        j["m"] = r.m;
        j["tau_opt"] = r.tau_opt ? nlohmann::json(*r.tau_opt)
                                 : nlohmann::json(nullptr);
        if (r.failed) {
          j["failed"] = true;
          j["error"] = r.error;
        } else {
          j["it"] = r.mean_iterations;
          j["cpu_s"] = r.mean_cpu_seconds;
          j["res"] = r.mean_res;
        }
        arr.push_back(j);
      }
      return arr.dump(2) + "\n";
    }
    case TableFormat::Text: {
      std::ostringstream out;
      char line[256];
      std::snprintf(line, sizeof(line), "%-8s %-14s %6s %8s %6s %10s %12s\n",
                    "method", "params", "m", "tau_opt", "it", "cpu_s", "res");
      out << line;
      for (const BenchRow& r : rows) {
        if (r.failed) {
          std::snprintf(line, sizeof(line), "%-8s %-14s %6zu %s\n",
                        r.method.c_str(), r.params.c_str(), r.m,
                        ("FAILED: " + r.error).c_str());
          out << line;
          continue;
        }
        std::string tau = r.tau_opt ? fmt("%.2f", *r.tau_opt) : "-";
        std::snprintf(line, sizeof(line),
                      "%-8s %-14s %6zu %8s %6.0f %10.4f %12.4e\n",
                      r.method.c_str(), r.params.c_str(), r.m, tau.c_str(),
                      r.mean_iterations, r.mean_cpu_seconds, r.mean_res);
        out << line;
      }
      return out.str();
    }
  }
  throw Error("unreachable");
}

}  // namespace gave
