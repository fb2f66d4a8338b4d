#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gave/problems.hpp"
#include "gave/solvers.hpp"

namespace gave {

enum class OmegaChoice { None, TwiceDiag, HalfDiag };
std::string omega_label(OmegaChoice c);
Matrix make_omega(OmegaChoice c, const Matrix& a);

// One method column of the experiment: a method, its shift choice, and
// whether tau is swept or fixed.
struct MethodSpec {
  Method method = Method::Picard;
  OmegaChoice omega = OmegaChoice::None;
  bool sweep_tau = false;
  double fixed_tau = 1.0;

  std::string params_label() const;
};

struct BenchPlan {
  std::vector<std::size_t> ms = {20};
  std::size_t block_rows = 0;  // 0: equal to m
  std::vector<MethodSpec> methods;
  int repetitions = 10;
  double tol = kDefaultTol;
  std::size_t max_iter = kDefaultMaxIter;
  double tau_step = 0.01;
  double tau_max = 2.0;
};

// The eight benchmarked methods with both shift choices where one
// applies (twelve rows total).
std::vector<MethodSpec> default_method_set();

struct BenchRow {
  std::string method;
  std::string params;
  std::size_t m = 0;
  std::optional<double> tau_opt;
  double mean_iterations = 0.0;
  double mean_cpu_seconds = 0.0;
  double mean_res = 0.0;
  bool converged = false;
  bool failed = false;
  std::string error;
};

// Builds the fully parameterized preset for one method spec on one
// problem; tau-swept methods receive tau and can be re-instantiated
// cheaply through MethodPreset::with_tau.
MethodPreset build_preset(const MethodSpec& spec, const GaveProblem& problem,
                          double tau);

// Scans the tau grid {step, 2 step, ..., tau_max} in increasing order and
// returns the first tau attaining the minimal iteration count, plus the
// averaged row at that tau. Grid points run on the worker pool; a point
// is cut short once it provably cannot beat the current best count.
std::pair<double, BenchRow> sweep_tau(const BenchPlan& plan,
                                      const MethodSpec& spec);
std::pair<double, BenchRow> sweep_tau(const BenchPlan& plan,
                                      const MethodSpec& spec,
                                      const GaveProblem& problem,
                                      std::size_t m);

std::vector<BenchRow> run_table(const BenchPlan& plan);

enum class TableFormat { Csv, Json, Text };
std::string emit_table(const std::vector<BenchRow>& rows, TableFormat format);

}  // namespace gave
