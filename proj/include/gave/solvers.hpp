#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gave/matrix.hpp"
#include "gave/splitting.hpp"

namespace gave {

inline constexpr double kDefaultTol = 1e-8;
inline constexpr std::size_t kDefaultMaxIter = 10000;
inline constexpr double kDivergenceThreshold = 1e12;

enum class Termination { Converged, MaxIter, Diverged };
std::string termination_name(Termination t);

struct SolveReport {
  std::size_t iterations = 0;
  // Relative residual per iterate, starting with the initial one;
  // always one entry longer than the number of iterations.
  std::vector<double> residual_history;
  Vector x_final;
  Vector y_final;  // empty for methods without a y variable
  Termination termination = Termination::MaxIter;
  double wall_time_seconds = 0.0;
  // Set when the right-hand side has zero norm and the history holds
  // absolute instead of relative residuals.
  bool residual_is_absolute = false;
  // Iterate history (x per step, starting point included); only filled
  // when requested through SolveHooks.
  std::vector<Vector> x_trace;

  double final_residual() const { return residual_history.back(); }
};

struct SolveHooks {
  bool record_x_trace = false;
};

// Parameters of the two-variable iteration: a splitting of A, a splitting
// of the transformation matrix Q, and the relaxation weight tau.
struct GnmsConfig {
  Splitting a_split;
  Splitting q_split;
  double tau = 1.0;
  std::size_t max_iter = kDefaultMaxIter;
  double tol = kDefaultTol;
};

// Q = Q1 = I, Q2 = 0; the trivial transformation splitting.
Splitting identity_q_split(std::size_t n);

// Starting vector (-1, 0, -1, 0, ...).
Vector default_x0(std::size_t n);

// ||A x - B |x| - c|| / ||c||; falls back to the absolute residual when
// ||c|| is zero.
double residual(const Matrix& a, const Matrix& b_mat, const Vector& c,
                const Vector& x);

// Two-variable iteration; updates y first, then x:
//   y <- (1 - tau) y + tau inv(Q1) (Q2 y + |x|)
//   x <- inv(M) (N x + B Q1 y_new - B Q2 y_old + c)
SolveReport gnms_solve(const GnmsConfig& cfg, const Matrix& b_mat,
                       const Vector& c, const Vector& x0, const Vector& y0,
                       const SolveHooks& hooks = {});
SolveReport gnms_solve(const GnmsConfig& cfg, const Matrix& b_mat,
                       const Vector& c);

// Algebraically identical reformulation of the x-update:
//   x <- inv(M) (N x + (1 - tau) B Q y + tau B |x| + c)
SolveReport gnms_solve_reformulated(const GnmsConfig& cfg, const Matrix& b_mat,
                                    const Vector& c, const Vector& x0,
                                    const Vector& y0,
                                    const SolveHooks& hooks = {});

// One-variable stationary iteration
//   x <- inv(m_part) (n_part x + b_scale B |x| + c_scale c)
// covering the whole shifted/relaxed family. a_mat is the matrix used
// for the stopping residual.
SolveReport single_step_solve(const Splitting& split, const Matrix& a_mat,
                              const Matrix& b_mat, const Vector& c,
                              double b_scale, double c_scale, const Vector& x0,
                              double tol = kDefaultTol,
                              std::size_t max_iter = kDefaultMaxIter,
                              const SolveHooks& hooks = {});

// Fixed-point iteration that updates x first, then relaxes y:
//   x <- inv(A) (B y + c);  y <- (1 - tau) y + tau |x|
SolveReport fpi_solve(const Matrix& a, const Matrix& b_mat, const Vector& c,
                      double tau, const Vector& x0, const Vector& y0,
                      double tol = kDefaultTol,
                      std::size_t max_iter = kDefaultMaxIter,
                      const SolveHooks& hooks = {});
SolveReport fpi_solve(const LuFactors& a_factors, const Matrix& a,
                      const Matrix& b_mat, const Vector& c, double tau,
                      const Vector& x0, const Vector& y0,
                      double tol = kDefaultTol,
                      std::size_t max_iter = kDefaultMaxIter,
                      const SolveHooks& hooks = {});

// Relaxed splitting iteration with a lagged y:
//   x <- inv(S) (T x + B y + c);  y <- (1 - tau) y + tau |x|
SolveReport rms_solve(const Splitting& st, const Matrix& b_mat,
                      const Vector& c, double tau, const Vector& x0,
                      const Vector& y0, double tol = kDefaultTol,
                      std::size_t max_iter = kDefaultMaxIter,
                      const SolveHooks& hooks = {});

// ---- named method presets --------------------------------------------------

enum class Method { Gnms, Mn, Picard, Fpi, Nms, Ngs, Rms, Ssmn, Rmn, Rnms };
std::string method_name(Method m);

// A fully parameterized method instance: holds the factored pieces so a
// preset can be run many times (or across a tau grid) without refactoring.
class MethodPreset {
 public:
  Method method() const { return method_; }
  const std::string& params_label() const { return params_label_; }
  bool has_y_variable() const;

  SolveReport run(const Matrix& b_mat, const Vector& c, const Vector& x0,
                  const Vector& y0, double tol = kDefaultTol,
                  std::size_t max_iter = kDefaultMaxIter,
                  const SolveHooks& hooks = {}) const;
  // Run with the standard starting vectors x0 = (-1,0,...), y0 = c.
  SolveReport run(const Matrix& b_mat, const Vector& c,
                  double tol = kDefaultTol,
                  std::size_t max_iter = kDefaultMaxIter) const;

  // The equivalent two-variable configuration (Q = Q1 = I, Q2 = 0,
  // tau = 1) where the method is a parameter collapse of it; empty for
  // the methods with the opposite update order (FPI, RMS).
  std::optional<GnmsConfig> to_gnms_config() const;

  double tau() const { return tau_; }
  MethodPreset with_tau(double tau) const;

 private:
  friend MethodPreset preset_gnms(const Matrix&, const Splitting&,
                                  const Splitting&, double);
  friend MethodPreset preset_mn(const Matrix&, const Matrix&);
  friend MethodPreset preset_picard(const Matrix&);
  friend MethodPreset preset_nms(const Matrix&, const Splitting&,
                                 const Matrix&);
  friend MethodPreset preset_ngs(const Matrix&, const Matrix&);
  friend MethodPreset preset_ssmn(const Matrix&, const Matrix&);
  friend MethodPreset preset_rmn(const Matrix&, double, const Matrix&);
  friend MethodPreset preset_rnms(const Splitting&, double, const Matrix&);
  friend MethodPreset preset_fpi(const Matrix&, double);
  friend MethodPreset preset_rms(const Splitting&, double);

  MethodPreset() = default;

  Method method_ = Method::Picard;
  std::string params_label_;
  double tau_ = 1.0;

  // single-step family
  std::optional<Splitting> step_split_;
  double b_scale_ = 1.0;
  double c_scale_ = 1.0;
  Matrix a_mat_;

  // two-variable family
  std::optional<Splitting> q_split_;

  // fpi
  std::shared_ptr<const LuFactors> a_factors_;
};

MethodPreset preset_gnms(const Matrix& a, const Splitting& a_split,
                         const Splitting& q_split, double tau);
MethodPreset preset_mn(const Matrix& a, const Matrix& omega);
MethodPreset preset_picard(const Matrix& a);
MethodPreset preset_nms(const Matrix& a, const Splitting& bar_split,
                        const Matrix& omega);
MethodPreset preset_ngs(const Matrix& a, const Matrix& omega);
MethodPreset preset_ssmn(const Matrix& a, const Matrix& omega_tilde);
MethodPreset preset_rmn(const Matrix& a, double theta, const Matrix& omega);
MethodPreset preset_rnms(const Splitting& hat_split, double theta,
                         const Matrix& omega_hat);
MethodPreset preset_fpi(const Matrix& a, double tau);
MethodPreset preset_rms(const Splitting& st, double tau);

}  // namespace gave
