#pragma once

#include <memory>

#include "gave/lu.hpp"
#include "gave/matrix.hpp"

namespace gave {

enum class SolveStrategy { Diagonal, LowerTriangular, UpperTriangular, Lu };

// A splitting U = m_part - n_part with a nonsingular m_part and an
// attached solve strategy for it. Construction factors m_part, which both
// verifies nonsingularity and provides the solve handle used by the norm
// estimators. Splittings are immutable and cheap to copy.
class Splitting {
 public:
  Splitting(Matrix m_part, Matrix n_part, SolveStrategy strategy,
            bool is_direct = true);

  const Matrix& m_part() const { return impl_->m; }
  const Matrix& n_part() const { return impl_->n; }
  SolveStrategy strategy() const { return impl_->strategy; }
  // True when m_part - n_part reconstructs the split matrix itself.
  bool is_direct_splitting() const { return impl_->direct; }
  const LuFactors& lu() const { return impl_->lu; }

  // Solves m_part * x = rhs with the attached strategy.
  Vector solve_m(const Vector& rhs) const;

  // The matrix this splitting decomposes (m_part - n_part).
  Matrix split_matrix() const { return sub(impl_->m, impl_->n); }

 private:
  struct Impl {
    Matrix m, n;
    SolveStrategy strategy;
    bool direct;
    LuFactors lu;
    Impl(Matrix m_, Matrix n_, SolveStrategy s, bool d)
        : m(std::move(m_)), n(std::move(n_)), strategy(s), direct(d),
          lu(LuFactors::factor(m)) {}
  };
  std::shared_ptr<const Impl> impl_;
};

// Decomposition a = d - l - u with d the diagonal part, l strictly lower
// and u strictly upper (both stored with positive sign).
struct DLUDecomposition {
  Matrix d, l, u;
};

DLUDecomposition dlu(const Matrix& a);

// Lower-triangular splitting m = D - coeff*L, n = (1-coeff)*L + U.
Splitting gnms_paper_splitting(const Matrix& a, double lower_coeff = 0.75);

// Gauss-Seidel style splitting m = D - L, n = U.
Splitting gauss_seidel_splitting(const Matrix& a);

// Trivial splitting m = a, n = 0.
Splitting full_splitting(const Matrix& a);

// Shift splitting m = (a + omega)/2, n = (omega - a)/2.
Splitting shift_splitting(const Matrix& a, const Matrix& omega);

// Relaxed splitting m = theta*a + omega, n = omega + (theta-1)*a.
Splitting relaxed_splitting(const Matrix& a, double theta,
                            const Matrix& omega);

// Relaxed splitting around an inner splitting a = m_hat - n_hat:
// m = theta*m_hat + omega_hat, n = omega_hat + (theta-1)*m_hat + n_hat.
Splitting relaxed_splitting(const Splitting& inner, double theta,
                            const Matrix& omega_hat);

// Named shift choices: the diagonal of a, scaled.
Matrix omega_twice_diag(const Matrix& a);
Matrix omega_half_diag(const Matrix& a);

}  // namespace gave
