#include "gave/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <json.hpp>

#include "gave/norms.hpp"

namespace gave {

namespace {

double norm_or_throw(const NormEstimate& e, const char* scalar) {
  if (!e.converged)
    throw NoConvergence(std::string("norm estimate for ") + scalar +
                        " did not converge");
  return e.value;
}

}  // namespace

ConvergenceScalars compute_scalars(const Splitting& a_split,
                                   const Splitting& q_split,
                                   const Matrix& b_mat, double tau, double tol,
                                   int max_iter) {
  if (tau <= 0.0) throw InvalidArgument("compute_scalars: tau must be positive");
  const LuFactors& q1 = q_split.lu();
  const LuFactors& m = a_split.lu();
  ConvergenceScalars s;
  s.tau = tau;
  s.alpha = norm_or_throw(
      two_norm_of_product_estimate(q1, q_split.n_part(), tol, max_iter),
      "alpha");
  s.beta = norm_or_throw(
      two_norm_of_product_estimate(q1, Matrix::identity(q_split.m_part().rows()),
                                   tol, max_iter),
      "beta");
  s.gamma = norm_or_throw(
      two_norm_of_product_estimate(m, a_split.n_part(), tol, max_iter),
      "gamma");
  s.mu = norm_or_throw(
      two_norm_of_product_estimate(m, matmul(b_mat, q_split.m_part()), tol,
                                   max_iter),
      "mu");
  s.nu = norm_or_throw(
      two_norm_of_product_estimate(m, matmul(b_mat, q_split.n_part()), tol,
                                   max_iter),
      "nu");
  return s;
}

Matrix build_w(const ConvergenceScalars& s) {
  const double f = std::abs(1.0 - s.tau) + s.tau * s.alpha;
  const double g = s.tau * s.beta;
  return Matrix::from_rows(
      {{f, g}, {f * s.mu + s.nu, g * s.mu + s.gamma}});
}

double rho_w_closed_form(const ConvergenceScalars& s) {
  // characteristic polynomial: x^2 - (f + mu g + gamma) x + (gamma f - g nu)
  const double f = std::abs(1.0 - s.tau) + s.tau * s.alpha;
  const double g = s.tau * s.beta;
  const double tr = f + s.mu * g + s.gamma;
  const double det = s.gamma * f - g * s.nu;
  const double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    return std::max(std::abs((tr + r) / 2.0), std::abs((tr - r) / 2.0));
  }
  return std::sqrt(det);
}

bool youngs_root_test(double s, double q) {
  return std::abs(q) < 1.0 && std::abs(s) < 1.0 + q;
}

Certificate make_certificate(std::string name, std::vector<Inequality> parts) {
  Certificate c;
  c.condition_name = std::move(name);
  c.details = std::move(parts);
  c.holds = true;
  c.margin = std::numeric_limits<double>::infinity();
  for (const Inequality& part : c.details) {
    c.holds = c.holds && part.holds();
    c.margin = std::min(c.margin, part.margin());
  }
  return c;
}

std::string certificate_to_json(const Certificate& c) {
  nlohmann::json j;
  j["condition"] = c.condition_name;
  j["holds"] = c.holds;
  j["margin"] = c.margin;
  j["inequalities"] = nlohmann::json::array();
  for (const Inequality& part : c.details)
    j["inequalities"].push_back({{"name", part.name},
                                 {"lhs", part.lhs},
                                 {"rhs", part.rhs},
                                 {"margin", part.margin()},
                                 {"holds", part.holds()}});
  return j.dump(2);
}

Certificate check_theorem_3_1(const ConvergenceScalars& s) {
  const double one_minus = std::abs(1.0 - s.tau);
  Inequality i1{"coupled-determinant",
                std::abs(s.gamma * one_minus +
                         s.tau * (s.gamma * s.alpha - s.beta * s.nu)),
                1.0};
  Inequality i2{"coupled-trace", s.tau * (s.mu * s.beta + s.beta * s.nu),
                (s.gamma - 1.0) * (one_minus + s.tau * s.alpha - 1.0)};
  return make_certificate("theorem-3-1", {i1, i2});
}

Certificate check_corollary_3_2(const ConvergenceScalars& s) {
  Inequality i1{"cross-term", std::abs(s.gamma * s.alpha - s.beta * s.nu),
                s.gamma};
  Inequality i2{"gamma-contraction", s.gamma, 1.0};
  Inequality i3{"shift-balance", s.beta * (s.mu + s.nu),
                (s.gamma - 1.0) * (s.alpha - 1.0)};
  Inequality i4{"tau-positive", 0.0, s.tau};
  // tau upper bound kept in product form so a nonpositive coefficient
  // (an unbounded admissible interval) stays well-defined
  Inequality i5{"tau-interval",
                s.tau * (s.beta * (s.mu + s.nu) -
                         (s.gamma - 1.0) * (s.alpha + 1.0)),
                2.0 * (1.0 - s.gamma)};
  return make_certificate("corollary-3-2", {i1, i2, i3, i4, i5});
}

Certificate check_mn(const Matrix& a, const Matrix& b_mat,
                     const Matrix& omega) {
  LuFactors pivot = LuFactors::factor(add(a, omega));
  double shift_part = two_norm_of_product(pivot, omega);
  double b_part = two_norm_of_product(pivot, b_mat);
  return make_certificate(
      "mn", {Inequality{"norm-sum", shift_part + b_part, 1.0}});
}

Certificate check_mn_old(const Matrix& a, const Matrix& b_mat,
                         const Matrix& omega) {
  LuFactors pivot = LuFactors::factor(add(a, omega));
  double inv_norm =
      two_norm_of_product(pivot, Matrix::identity(a.rows()));
  double bound = inv_norm * (two_norm(omega) + two_norm(b_mat));
  return make_certificate("mn-old",
                          {Inequality{"product-bound", bound, 1.0}});
}

Certificate check_picard(const Matrix& a, const Matrix& b_mat) {
  LuFactors f = LuFactors::factor(a);
  double v = two_norm_of_product(f, b_mat);
  return make_certificate("picard-norm", {Inequality{"norm", v, 1.0}});
}

Certificate check_picard_rho(const Matrix& a, const Matrix& b_mat) {
  LuFactors f = LuFactors::factor(a);
  NormEstimate e =
      spectral_radius_of_product_estimate(f, abs_entries(b_mat));
  if (!e.converged)
    throw NoConvergence("spectral radius estimate did not converge");
  return make_certificate("picard-rho",
                          {Inequality{"spectral-radius", e.value, 1.0}});
}

Certificate check_nms(const Splitting& bar_split, const Matrix& b_mat,
                      const Matrix& omega) {
  LuFactors pivot = LuFactors::factor(add(bar_split.m_part(), omega));
  double lag_part =
      two_norm_of_product(pivot, add(bar_split.n_part(), omega));
  double b_part = two_norm_of_product(pivot, b_mat);
  return make_certificate(
      "nms", {Inequality{"norm-sum", lag_part + b_part, 1.0}});
}

Certificate check_nms_old(const Splitting& bar_split, const Matrix& b_mat,
                          const Matrix& omega) {
  LuFactors pivot = LuFactors::factor(add(bar_split.m_part(), omega));
  double inv_norm = two_norm_of_product(
      pivot, Matrix::identity(bar_split.m_part().rows()));
  double bound = inv_norm * (two_norm(add(bar_split.n_part(), omega)) +
                             two_norm(b_mat));
  return make_certificate("nms-old",
                          {Inequality{"product-bound", bound, 1.0}});
}

namespace {

// pivot = theta*Mhat + OmegaHat, companion = OmegaHat + (theta-1)*Mhat + Nhat
std::pair<Matrix, Matrix> relaxed_parts(const Splitting& hat_split,
                                        double theta,
                                        const Matrix& omega_hat) {
  if (theta < 0.0) throw NegativeTheta("relaxed condition: theta < 0");
  Matrix pivot = add(scale(hat_split.m_part(), theta), omega_hat);
  Matrix companion = add(
      add(omega_hat, scale(hat_split.m_part(), theta - 1.0)),
      hat_split.n_part());
  return {std::move(pivot), std::move(companion)};
}

}  // namespace

Certificate check_rnms(const Splitting& hat_split, double theta,
                       const Matrix& omega_hat, const Matrix& b_mat) {
  auto [pivot_mat, companion] = relaxed_parts(hat_split, theta, omega_hat);
  LuFactors pivot = LuFactors::factor(pivot_mat);
  double lag_part = two_norm_of_product(pivot, companion);
  double b_part = two_norm_of_product(pivot, b_mat);
  return make_certificate(
      "rnms", {Inequality{"norm-sum", lag_part + b_part, 1.0}});
}

Certificate check_rnms_old(const Splitting& hat_split, double theta,
                           const Matrix& omega_hat, const Matrix& b_mat) {
  auto [pivot_mat, companion] = relaxed_parts(hat_split, theta, omega_hat);
  LuFactors pivot = LuFactors::factor(pivot_mat);
  double inv_norm =
      two_norm_of_product(pivot, Matrix::identity(pivot_mat.rows()));
  double bound = inv_norm * (two_norm(companion) + two_norm(b_mat));
  return make_certificate("rnms-old",
                          {Inequality{"product-bound", bound, 1.0}});
}

}  // namespace gave
