#pragma once

#include "gave/lu.hpp"
#include "gave/matrix.hpp"

namespace gave {

struct NormEstimate {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

inline constexpr double kNormTol = 1e-10;
inline constexpr int kNormMaxIter = 5000;

// Largest singular value by power iteration on transpose(U)*U, started
// from a deterministic pseudo-random positive vector. Stops when the
// Rayleigh-quotient residual certifies the requested relative accuracy;
// an unconverged run returns the best estimate tagged unconverged.
NormEstimate two_norm_estimate(const Matrix& m, double tol = kNormTol,
                               int max_iter = kNormMaxIter);
double two_norm(const Matrix& m, double tol = kNormTol,
                int max_iter = kNormMaxIter);

// Same contract applied to the operator inverse(M)*R without forming the
// product: alternates solves with transposed solves and multiplications.
NormEstimate two_norm_of_product_estimate(const LuFactors& solve_with,
                                          const Matrix& right,
                                          double tol = kNormTol,
                                          int max_iter = kNormMaxIter);
double two_norm_of_product(const LuFactors& solve_with, const Matrix& right,
                           double tol = kNormTol, int max_iter = kNormMaxIter);

// Perron-root estimate for an entrywise-nonnegative matrix, power
// iteration with a strictly positive start vector.
NormEstimate spectral_radius_nonneg_estimate(const Matrix& m,
                                             double tol = kNormTol,
                                             int max_iter = kNormMaxIter);
double spectral_radius_nonneg(const Matrix& m, double tol = kNormTol,
                              int max_iter = kNormMaxIter);

// Dominant-eigenvalue magnitude of a general square matrix (power
// iteration; requires a real dominant eigenvalue to converge).
NormEstimate spectral_radius_estimate(const Matrix& m, double tol = kNormTol,
                                      int max_iter = kNormMaxIter);

// Dominant-eigenvalue magnitude of inverse(M)*R, applied as an operator.
NormEstimate spectral_radius_of_product_estimate(const LuFactors& solve_with,
                                                 const Matrix& right,
                                                 double tol = kNormTol,
                                                 int max_iter = kNormMaxIter);

}  // namespace gave
