#include "gave/norms.hpp"

#include <cmath>
#include <functional>

#include "gave/rng.hpp"

namespace gave {

namespace {

Vector start_vector(std::size_t n) {
  SplitMix64 rng(0x5eed0000u + static_cast<std::uint64_t>(n));
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 0.1 + rng.uniform();
  return v;
}

void normalize(Vector& v) {
  double nrm = vec_norm2(v);
  if (nrm == 0.0) return;
  for (double& x : v) x /= nrm;
}

// Power iteration on a symmetric positive semidefinite operator G.
// Returns the largest eigenvalue of G; the Rayleigh-quotient residual
// ||G v - lambda v|| bounds the distance to the nearest eigenvalue.
NormEstimate symmetric_power_iteration(
    std::size_t n, const std::function<Vector(const Vector&)>& apply_g,
    double tol, int max_iter) {
  if (n == 0) return {0.0, true, 0};
  if (tol <= 0.0) throw InvalidArgument("norm estimate: tol must be positive");
  Vector v = start_vector(n);
  normalize(v);
  double lambda = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Vector w = apply_g(v);
    lambda = dot(v, w);
    Vector r = vec_sub(w, vec_scale(v, lambda));
    if (vec_norm2(r) <= tol * std::max(lambda, 1e-300))
      return {lambda, true, it};
    double wn = vec_norm2(w);
    if (wn == 0.0) return {0.0, true, it};
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
  }
  return {lambda, false, max_iter};
}

// Growth-factor power iteration for a general (possibly signed) operator.
// The estimate is ||M v||; stops after the relative change stays under
// tol for three consecutive iterations.
NormEstimate growth_power_iteration(
    std::size_t n, const std::function<Vector(const Vector&)>& apply,
    double tol, int max_iter) {
  if (n == 0) return {0.0, true, 0};
  if (tol <= 0.0) throw InvalidArgument("norm estimate: tol must be positive");
  Vector v = start_vector(n);
  normalize(v);
  double est = 0.0;
  int stable = 0;
  for (int it = 1; it <= max_iter; ++it) {
    Vector w = apply(v);
    double wn = vec_norm2(w);
    if (wn == 0.0) return {0.0, true, it};
    double change = std::abs(wn - est);
    est = wn;
    if (change <= tol * std::max(est, 1e-300)) {
      if (++stable >= 3) return {est, true, it};
    } else {
      stable = 0;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
  }
  return {est, false, max_iter};
}

NormEstimate sigma_from_gram(std::size_t n,
                             const std::function<Vector(const Vector&)>& gram,
                             double tol, int max_iter) {
  // Halve the tolerance: sigma = sqrt(lambda) doubles relative accuracy.
  NormEstimate e = symmetric_power_iteration(n, gram, 0.5 * tol, max_iter);
  e.value = std::sqrt(std::max(e.value, 0.0));
  return e;
}

}  // namespace

NormEstimate two_norm_estimate(const Matrix& m, double tol, int max_iter) {
  auto gram = [&m](const Vector& v) {
    return mat_vec_transposed(m, mat_vec(m, v));
  };
  return sigma_from_gram(m.cols(), gram, tol, max_iter);
}

double two_norm(const Matrix& m, double tol, int max_iter) {
  return two_norm_estimate(m, tol, max_iter).value;
}

NormEstimate two_norm_of_product_estimate(const LuFactors& solve_with,
                                          const Matrix& right, double tol,
                                          int max_iter) {
  if (solve_with.size() != right.rows())
    throw DimensionMismatch("two_norm_of_product: factor/right sizes");
  auto gram = [&](const Vector& v) {
    Vector w = solve_with.solve(mat_vec(right, v));
    return mat_vec_transposed(right, solve_with.solve_transposed(w));
  };
  return sigma_from_gram(right.cols(), gram, tol, max_iter);
}

double two_norm_of_product(const LuFactors& solve_with, const Matrix& right,
                           double tol, int max_iter) {
  return two_norm_of_product_estimate(solve_with, right, tol, max_iter).value;
}

NormEstimate spectral_radius_nonneg_estimate(const Matrix& m, double tol,
                                             int max_iter) {
  if (!m.is_square())
    throw DimensionMismatch("spectral_radius_nonneg: not square");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j) < 0.0)
        throw InvalidArgument("spectral_radius_nonneg: negative entry");
  auto apply = [&m](const Vector& v) { return mat_vec(m, v); };
  return growth_power_iteration(m.rows(), apply, tol, max_iter);
}

double spectral_radius_nonneg(const Matrix& m, double tol, int max_iter) {
  return spectral_radius_nonneg_estimate(m, tol, max_iter).value;
}

NormEstimate spectral_radius_estimate(const Matrix& m, double tol,
                                      int max_iter) {
  if (!m.is_square()) throw DimensionMismatch("spectral_radius: not square");
  auto apply = [&m](const Vector& v) { return mat_vec(m, v); };
  return growth_power_iteration(m.rows(), apply, tol, max_iter);
}

NormEstimate spectral_radius_of_product_estimate(const LuFactors& solve_with,
                                                 const Matrix& right,
                                                 double tol, int max_iter) {
  if (solve_with.size() != right.rows() || !right.is_square())
    throw DimensionMismatch("spectral_radius_of_product: sizes");
  auto apply = [&](const Vector& v) {
    return solve_with.solve(mat_vec(right, v));
  };
  return growth_power_iteration(right.rows(), apply, tol, max_iter);
}

}  // namespace gave
