#include "gave/solvers.hpp"

#include <chrono>
#include <cmath>

namespace gave {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Shared residual-driven loop bookkeeping.
struct RunState {
  const Matrix* a;
  const Matrix* b;
  const Vector* c;
  double tol;
  std::size_t max_iter;
  bool trace;

  SolveReport report;
  double c_norm = 0.0;
  Clock::time_point t0;

  RunState(const Matrix& a_mat, const Matrix& b_mat, const Vector& c_vec,
           double tol_, std::size_t max_iter_, const SolveHooks& hooks)
      : a(&a_mat), b(&b_mat), c(&c_vec), tol(tol_), max_iter(max_iter_),
        trace(hooks.record_x_trace) {
    c_norm = vec_norm2(c_vec);
    report.residual_is_absolute = (c_norm == 0.0);
    t0 = Clock::now();
  }

  double res_of(const Vector& x) const {
    Vector r =
        vec_sub(vec_sub(mat_vec(*a, x), mat_vec(*b, abs_vector(x))), *c);
    double nr = vec_norm2(r);
    return report.residual_is_absolute ? nr : nr / c_norm;
  }

  void record(const Vector& x) {
    report.residual_history.push_back(res_of(x));
    if (trace) report.x_trace.push_back(x);
  }

  double last() const { return report.residual_history.back(); }

  // True while another iteration should run.
  bool keep_going() const {
    double r = last();
    return r > tol && std::isfinite(r) && r <= kDivergenceThreshold &&
           report.iterations < max_iter;
  }

  SolveReport finish(Vector x, Vector y) {
    double r = last();
    if (r <= tol)
      report.termination = Termination::Converged;
    else if (!std::isfinite(r) || r > kDivergenceThreshold)
      report.termination = Termination::Diverged;
    else
      report.termination = Termination::MaxIter;
    report.x_final = std::move(x);
    report.y_final = std::move(y);
    report.wall_time_seconds = seconds_since(t0);
    return std::move(report);
  }
};

void check_problem_dims(const Matrix& a, const Matrix& b_mat, const Vector& c,
                        const Vector& x0) {
  if (!a.is_square() || a.rows() != b_mat.rows() || a.cols() != b_mat.cols())
    throw DimensionMismatch("solver: A and B must be square and equal-sized");
  if (c.size() != a.rows() || x0.size() != a.rows())
    throw DimensionMismatch("solver: vector lengths disagree");
  require_finite(c, "right-hand side");
  require_finite(x0, "starting vector x0");
}

}  // namespace

std::string termination_name(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIter: return "max-iter";
    case Termination::Diverged: return "diverged";
  }
  return "?";
}

Splitting identity_q_split(std::size_t n) {
  return Splitting(Matrix::identity(n), Matrix::banded(n, 0, 0),
                   SolveStrategy::Diagonal);
}

Vector default_x0(std::size_t n) {
  Vector x(n, 0.0);
  for (std::size_t i = 0; i < n; i += 2) x[i] = -1.0;
  return x;
}

double residual(const Matrix& a, const Matrix& b_mat, const Vector& c,
                const Vector& x) {
  if (x.size() != a.cols() || c.size() != a.rows())
    throw DimensionMismatch("residual: vector lengths disagree");
  Vector r = vec_sub(vec_sub(mat_vec(a, x), mat_vec(b_mat, abs_vector(x))), c);
  double nr = vec_norm2(r);
  double nc = vec_norm2(c);
  return nc == 0.0 ? nr : nr / nc;
}

SolveReport gnms_solve(const GnmsConfig& cfg, const Matrix& b_mat,
                       const Vector& c, const Vector& x0, const Vector& y0,
                       const SolveHooks& hooks) {
  if (cfg.tau <= 0.0)
    throw InvalidArgument("gnms_solve: tau must be positive");
  check_problem_dims(cfg.a_split.m_part(), b_mat, c, x0);
  if (y0.size() != c.size())
    throw DimensionMismatch("gnms_solve: y0 length disagrees");
  require_finite(y0, "starting vector y0");
  // Q itself must be nonsingular for the transformation to make sense.
  LuFactors::factor(cfg.q_split.split_matrix());

  const Matrix a_mat = cfg.a_split.split_matrix();
  const Matrix& n_mat = cfg.a_split.n_part();
  const Matrix& q1 = cfg.q_split.m_part();
  const Matrix& q2 = cfg.q_split.n_part();
  const double tau = cfg.tau;

  RunState run(a_mat, b_mat, c, cfg.tol, cfg.max_iter, hooks);
  Vector x = x0;
  Vector y = y0;
  run.record(x);
  while (run.keep_going()) {
    Vector y_new = vec_add(
        vec_scale(y, 1.0 - tau),
        vec_scale(cfg.q_split.solve_m(vec_add(mat_vec(q2, y), abs_vector(x))),
                  tau));
    Vector coupled = vec_sub(mat_vec(q1, y_new), mat_vec(q2, y));
    Vector rhs =
        vec_add(vec_add(mat_vec(n_mat, x), mat_vec(b_mat, coupled)), c);
    x = cfg.a_split.solve_m(rhs);
    y = std::move(y_new);
    ++run.report.iterations;
    run.record(x);
  }
  return run.finish(std::move(x), std::move(y));
}

SolveReport gnms_solve(const GnmsConfig& cfg, const Matrix& b_mat,
                       const Vector& c) {
  return gnms_solve(cfg, b_mat, c, default_x0(c.size()), c);
}

SolveReport gnms_solve_reformulated(const GnmsConfig& cfg, const Matrix& b_mat,
                                    const Vector& c, const Vector& x0,
                                    const Vector& y0, const SolveHooks& hooks) {
  if (cfg.tau <= 0.0)
    throw InvalidArgument("gnms_solve_reformulated: tau must be positive");
  check_problem_dims(cfg.a_split.m_part(), b_mat, c, x0);
  if (y0.size() != c.size())
    throw DimensionMismatch("gnms_solve_reformulated: y0 length disagrees");
  require_finite(y0, "starting vector y0");
  LuFactors::factor(cfg.q_split.split_matrix());

  const Matrix a_mat = cfg.a_split.split_matrix();
  const Matrix q_mat = cfg.q_split.split_matrix();
  const Matrix& n_mat = cfg.a_split.n_part();
  const Matrix& q2 = cfg.q_split.n_part();
  const double tau = cfg.tau;

  RunState run(a_mat, b_mat, c, cfg.tol, cfg.max_iter, hooks);
  Vector x = x0;
  Vector y = y0;
  run.record(x);
  while (run.keep_going()) {
    Vector ax = abs_vector(x);
    Vector y_new =
        vec_add(vec_scale(y, 1.0 - tau),
                vec_scale(cfg.q_split.solve_m(vec_add(mat_vec(q2, y), ax)),
                          tau));
    // x-update uses the old y through B Q y and |x| directly
    Vector rhs = vec_add(mat_vec(n_mat, x),
                         vec_scale(mat_vec(b_mat, mat_vec(q_mat, y)),
                                   1.0 - tau));
    rhs = vec_add(rhs, vec_scale(mat_vec(b_mat, ax), tau));
    rhs = vec_add(rhs, c);
    x = cfg.a_split.solve_m(rhs);
    y = std::move(y_new);
    ++run.report.iterations;
    run.record(x);
  }
  return run.finish(std::move(x), std::move(y));
}

SolveReport single_step_solve(const Splitting& split, const Matrix& a_mat,
                              const Matrix& b_mat, const Vector& c,
                              double b_scale, double c_scale, const Vector& x0,
                              double tol, std::size_t max_iter,
                              const SolveHooks& hooks) {
  check_problem_dims(a_mat, b_mat, c, x0);
  const Vector c_scaled = vec_scale(c, c_scale);
  RunState run(a_mat, b_mat, c, tol, max_iter, hooks);
  Vector x = x0;
  run.record(x);
  while (run.keep_going()) {
    Vector rhs = vec_add(
        vec_add(mat_vec(split.n_part(), x),
                vec_scale(mat_vec(b_mat, abs_vector(x)), b_scale)),
        c_scaled);
    x = split.solve_m(rhs);
    ++run.report.iterations;
    run.record(x);
  }
  return run.finish(std::move(x), {});
}

SolveReport fpi_solve(const LuFactors& a_factors, const Matrix& a,
                      const Matrix& b_mat, const Vector& c, double tau,
                      const Vector& x0, const Vector& y0, double tol,
                      std::size_t max_iter, const SolveHooks& hooks) {
  if (tau <= 0.0) throw InvalidArgument("fpi_solve: tau must be positive");
  check_problem_dims(a, b_mat, c, x0);
  if (y0.size() != c.size())
    throw DimensionMismatch("fpi_solve: y0 length disagrees");
  require_finite(y0, "starting vector y0");

  RunState run(a, b_mat, c, tol, max_iter, hooks);
  Vector x = x0;
  Vector y = y0;
  run.record(x);
  while (run.keep_going()) {
    x = a_factors.solve(vec_add(mat_vec(b_mat, y), c));
    y = vec_add(vec_scale(y, 1.0 - tau), vec_scale(abs_vector(x), tau));
    ++run.report.iterations;
    run.record(x);
  }
  return run.finish(std::move(x), std::move(y));
}

SolveReport fpi_solve(const Matrix& a, const Matrix& b_mat, const Vector& c,
                      double tau, const Vector& x0, const Vector& y0,
                      double tol, std::size_t max_iter,
                      const SolveHooks& hooks) {
  LuFactors f = LuFactors::factor(a);
  return fpi_solve(f, a, b_mat, c, tau, x0, y0, tol, max_iter, hooks);
}

SolveReport rms_solve(const Splitting& st, const Matrix& b_mat,
                      const Vector& c, double tau, const Vector& x0,
                      const Vector& y0, double tol, std::size_t max_iter,
                      const SolveHooks& hooks) {
  if (tau <= 0.0) throw InvalidArgument("rms_solve: tau must be positive");
  const Matrix a_mat = st.split_matrix();
  check_problem_dims(a_mat, b_mat, c, x0);
  if (y0.size() != c.size())
    throw DimensionMismatch("rms_solve: y0 length disagrees");
  require_finite(y0, "starting vector y0");

  RunState run(a_mat, b_mat, c, tol, max_iter, hooks);
  Vector x = x0;
  Vector y = y0;
  run.record(x);
  while (run.keep_going()) {
    Vector rhs =
        vec_add(vec_add(mat_vec(st.n_part(), x), mat_vec(b_mat, y)), c);
    x = st.solve_m(rhs);
    y = vec_add(vec_scale(y, 1.0 - tau), vec_scale(abs_vector(x), tau));
    ++run.report.iterations;
    run.record(x);
  }
  return run.finish(std::move(x), std::move(y));
}

// ---- presets ----------------------------------------------------------------

std::string method_name(Method m) {
  switch (m) {
    case Method::Gnms: return "gnms";
    case Method::Mn: return "mn";
    case Method::Picard: return "picard";
    case Method::Fpi: return "fpi";
    case Method::Nms: return "nms";
    case Method::Ngs: return "ngs";
    case Method::Rms: return "rms";
    case Method::Ssmn: return "ssmn";
    case Method::Rmn: return "rmn";
    case Method::Rnms: return "rnms";
  }
  return "?";
}

bool MethodPreset::has_y_variable() const {
  return method_ == Method::Gnms || method_ == Method::Fpi ||
         method_ == Method::Rms;
}

SolveReport MethodPreset::run(const Matrix& b_mat, const Vector& c,
                              const Vector& x0, const Vector& y0, double tol,
                              std::size_t max_iter,
                              const SolveHooks& hooks) const {
  switch (method_) {
    case Method::Gnms: {
      GnmsConfig cfg{*step_split_, *q_split_, tau_, max_iter, tol};
      return gnms_solve(cfg, b_mat, c, x0, y0, hooks);
    }
    case Method::Fpi:
      return fpi_solve(*a_factors_, a_mat_, b_mat, c, tau_, x0, y0, tol,
                       max_iter, hooks);
    case Method::Rms:
      return rms_solve(*step_split_, b_mat, c, tau_, x0, y0, tol, max_iter,
                       hooks);
    default:
      return single_step_solve(*step_split_, a_mat_, b_mat, c, b_scale_,
                               c_scale_, x0, tol, max_iter, hooks);
  }
}

SolveReport MethodPreset::run(const Matrix& b_mat, const Vector& c, double tol,
                              std::size_t max_iter) const {
  return run(b_mat, c, default_x0(c.size()), c, tol, max_iter);
}

std::optional<GnmsConfig> MethodPreset::to_gnms_config() const {
  switch (method_) {
    case Method::Gnms:
      return GnmsConfig{*step_split_, *q_split_, tau_};
    case Method::Mn:
    case Method::Picard:
    case Method::Nms:
    case Method::Ngs:
    case Method::Rmn:
    case Method::Rnms:
      // collapse: Q = Q1 = I, Q2 = 0, tau = 1, M = pivot, N = companion
      return GnmsConfig{*step_split_, identity_q_split(a_mat_.rows()), 1.0};
    case Method::Ssmn: {
      // the halved form splits A directly and drops the doubled scales
      return GnmsConfig{Splitting(scale(step_split_->m_part(), 0.5),
                                  scale(step_split_->n_part(), 0.5),
                                  SolveStrategy::Lu),
                        identity_q_split(a_mat_.rows()), 1.0};
    }
    case Method::Fpi:
    case Method::Rms:
      return std::nullopt;  // these update x before y
  }
  return std::nullopt;
}

MethodPreset MethodPreset::with_tau(double tau) const {
  MethodPreset copy = *this;
  copy.tau_ = tau;
  return copy;
}

namespace {

// pivot + companion pair stays triangular when the shift is diagonal
SolveStrategy merged_strategy(SolveStrategy base, const Matrix& omega) {
  bool omega_diagonal =
      omega.is_banded() && omega.lower_bandwidth() == 0 &&
      omega.upper_bandwidth() == 0;
  if (omega_diagonal && (base == SolveStrategy::Diagonal ||
                         base == SolveStrategy::LowerTriangular ||
                         base == SolveStrategy::UpperTriangular))
    return base == SolveStrategy::Diagonal ? SolveStrategy::Diagonal : base;
  return SolveStrategy::Lu;
}

}  // namespace

MethodPreset preset_gnms(const Matrix& a, const Splitting& a_split,
                         const Splitting& q_split, double tau) {
  MethodPreset p;
  p.method_ = Method::Gnms;
  p.tau_ = tau;
  p.step_split_ = a_split;
  p.q_split_ = q_split;
  p.a_mat_ = a;
  return p;
}

MethodPreset preset_mn(const Matrix& a, const Matrix& omega) {
  MethodPreset p;
  p.method_ = Method::Mn;
  p.step_split_ = Splitting(add(a, omega), omega, SolveStrategy::Lu);
  p.a_mat_ = a;
  return p;
}

MethodPreset preset_picard(const Matrix& a) {
  MethodPreset p;
  p.method_ = Method::Picard;
  p.step_split_ = full_splitting(a);
  p.a_mat_ = a;
  return p;
}

MethodPreset preset_nms(const Matrix& a, const Splitting& bar_split,
                        const Matrix& omega) {
  MethodPreset p;
  p.method_ = Method::Nms;
  p.step_split_ = Splitting(add(bar_split.m_part(), omega),
                            add(bar_split.n_part(), omega),
                            merged_strategy(bar_split.strategy(), omega));
  p.a_mat_ = a;
  return p;
}

MethodPreset preset_ngs(const Matrix& a, const Matrix& omega) {
  MethodPreset p = preset_nms(a, gauss_seidel_splitting(a), omega);
  p.method_ = Method::Ngs;
  return p;
}

MethodPreset preset_ssmn(const Matrix& a, const Matrix& omega_tilde) {
  MethodPreset p;
  p.method_ = Method::Ssmn;
  // executes literally with doubled B and c terms
  p.step_split_ = Splitting(add(a, omega_tilde), sub(omega_tilde, a),
                            SolveStrategy::Lu, /*is_direct=*/false);
  p.b_scale_ = 2.0;
  p.c_scale_ = 2.0;
  p.a_mat_ = a;
  return p;
}

MethodPreset preset_rmn(const Matrix& a, double theta, const Matrix& omega) {
  MethodPreset p;
  p.method_ = Method::Rmn;
  p.step_split_ = relaxed_splitting(a, theta, omega);
  p.a_mat_ = a;
  return p;
}

MethodPreset preset_rnms(const Splitting& hat_split, double theta,
                         const Matrix& omega_hat) {
  MethodPreset p;
  p.method_ = Method::Rnms;
  p.step_split_ = relaxed_splitting(hat_split, theta, omega_hat);
  p.a_mat_ = hat_split.split_matrix();
  return p;
}

MethodPreset preset_fpi(const Matrix& a, double tau) {
  MethodPreset p;
  p.method_ = Method::Fpi;
  p.tau_ = tau;
  p.a_factors_ = std::make_shared<const LuFactors>(LuFactors::factor(a));
  p.a_mat_ = a;
  return p;
}

MethodPreset preset_rms(const Splitting& st, double tau) {
  MethodPreset p;
  p.method_ = Method::Rms;
  p.tau_ = tau;
  p.step_split_ = st;
  p.a_mat_ = st.split_matrix();
  return p;
}

}  // namespace gave
