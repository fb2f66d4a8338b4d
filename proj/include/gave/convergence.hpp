#pragma once

#include <string>
#include <vector>

#include "gave/matrix.hpp"
#include "gave/splitting.hpp"

namespace gave {

// The five operator norms that drive the contraction analysis, plus the
// relaxation weight they are evaluated for:
//   alpha = ||inv(Q1) Q2||, beta = ||inv(Q1)||, gamma = ||inv(M) N||,
//   mu = ||inv(M) B Q1||,   nu = ||inv(M) B Q2||
struct ConvergenceScalars {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  double tau = 1.0;
};

ConvergenceScalars compute_scalars(const Splitting& a_split,
                                   const Splitting& q_split,
                                   const Matrix& b_mat, double tau,
                                   double tol = 1e-10, int max_iter = 5000);

// The 2x2 nonnegative matrix whose spectral radius bounds the coupled
// iterate differences; with f = |1-tau| + tau*alpha and g = tau*beta:
//   [ f          g          ]
//   [ f*mu + nu  g*mu+gamma ]
Matrix build_w(const ConvergenceScalars& s);

// Spectral radius of that 2x2 matrix by the quadratic formula.
double rho_w_closed_form(const ConvergenceScalars& s);

// Both roots of x^2 - s x + q lie strictly inside the unit circle
// exactly when |q| < 1 and |s| < 1 + q.
bool youngs_root_test(double s, double q);

// One strict inequality lhs < rhs of a certificate.
struct Inequality {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin() const { return rhs - lhs; }
  bool holds() const { return lhs < rhs; }
};

struct Certificate {
  std::string condition_name;
  bool holds = false;
  double margin = 0.0;  // smallest inequality margin
  std::vector<Inequality> details;
};

Certificate make_certificate(std::string name, std::vector<Inequality> parts);

// JSON rendering of a certificate (condition, verdict, inequalities).
std::string certificate_to_json(const Certificate& c);

// Contraction condition for the general two-variable iteration:
//   |gamma |1-tau| + tau (gamma alpha - beta nu)| < 1  and
//   tau (mu beta + beta nu) < (gamma - 1)(|1-tau| + tau alpha - 1)
Certificate check_theorem_3_1(const ConvergenceScalars& s);

// tau-interval form:
//   |gamma alpha - beta nu| < gamma < 1,
//   beta (mu + nu) < (gamma-1)(alpha-1),
//   tau (beta (mu+nu) - (gamma-1)(alpha+1)) < 2 (1 - gamma), tau > 0
Certificate check_corollary_3_2(const ConvergenceScalars& s);

// Shifted-pivot conditions: the sum-of-norms form and the older
// product-of-norms form it weakens.
Certificate check_mn(const Matrix& a, const Matrix& b_mat,
                     const Matrix& omega);
Certificate check_mn_old(const Matrix& a, const Matrix& b_mat,
                         const Matrix& omega);

// Picard conditions: ||inv(A) B|| < 1, and the spectral-radius variant
// rho(inv(A) |B|) < 1.
Certificate check_picard(const Matrix& a, const Matrix& b_mat);
Certificate check_picard_rho(const Matrix& a, const Matrix& b_mat);

Certificate check_nms(const Splitting& bar_split, const Matrix& b_mat,
                      const Matrix& omega);
Certificate check_nms_old(const Splitting& bar_split, const Matrix& b_mat,
                          const Matrix& omega);

Certificate check_rnms(const Splitting& hat_split, double theta,
                       const Matrix& omega_hat, const Matrix& b_mat);
Certificate check_rnms_old(const Splitting& hat_split, double theta,
                           const Matrix& omega_hat, const Matrix& b_mat);

}  // namespace gave
