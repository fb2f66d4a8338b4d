#include "gave/splitting.hpp"

#include <algorithm>
#include <cmath>

namespace gave {

namespace {

void require_square(const Matrix& a, const char* ctx) {
  if (!a.is_square())
    throw DimensionMismatch(std::string(ctx) + ": matrix not square");
}

// Construction-time check that m - n reproduces the split matrix.
void verify_reconstruction(const Matrix& m, const Matrix& n,
                           const Matrix& target) {
  double scale = std::max(max_abs(target), 1.0);
  if (max_abs_diff(sub(m, n), target) > 1e-14 * scale)
    throw InvalidArgument("splitting does not reconstruct its matrix");
}

}  // namespace

Splitting::Splitting(Matrix m_part, Matrix n_part, SolveStrategy strategy,
                     bool is_direct) {
  if (!m_part.is_square() || m_part.rows() != n_part.rows() ||
      m_part.cols() != n_part.cols())
    throw DimensionMismatch("Splitting: part shapes disagree");
  impl_ = std::make_shared<const Impl>(std::move(m_part), std::move(n_part),
                                       strategy, is_direct);
}

Vector Splitting::solve_m(const Vector& rhs) const {
  switch (impl_->strategy) {
    case SolveStrategy::Diagonal:
    case SolveStrategy::LowerTriangular:
      return triangular_solve(impl_->m, rhs, TriShape::Lower);
    case SolveStrategy::UpperTriangular:
      return triangular_solve(impl_->m, rhs, TriShape::Upper);
    case SolveStrategy::Lu:
      return impl_->lu.solve(rhs);
  }
  throw Error("unreachable");
}

DLUDecomposition dlu(const Matrix& a) {
  require_square(a, "dlu");
  const std::size_t n = a.rows();
  const std::size_t kl = a.lower_bandwidth();
  const std::size_t ku = a.upper_bandwidth();
  DLUDecomposition out{
      Matrix::banded(n, 0, 0),
      a.is_banded() ? Matrix::banded(n, kl, 0) : Matrix::dense(n, n),
      a.is_banded() ? Matrix::banded(n, 0, ku) : Matrix::dense(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.d.set(i, i, a.at(i, i));
    std::size_t j0 = i > kl ? i - kl : 0;
    for (std::size_t j = j0; j < i; ++j) {
      double v = a.at(i, j);
      if (v != 0.0) out.l.set(i, j, -v);
    }
    std::size_t j1 = std::min(n - 1, i + ku);
    for (std::size_t j = i + 1; j <= j1; ++j) {
      double v = a.at(i, j);
      if (v != 0.0) out.u.set(i, j, -v);
    }
  }
  return out;
}

Splitting gnms_paper_splitting(const Matrix& a, double lower_coeff) {
  require_square(a, "gnms_paper_splitting");
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (a.at(i, i) == 0.0)
      throw ZeroDiagonal("gnms_paper_splitting: zero diagonal at " +
                         std::to_string(i));
  DLUDecomposition parts = dlu(a);
  Matrix m = sub(parts.d, scale(parts.l, lower_coeff));
  Matrix n = add(scale(parts.l, 1.0 - lower_coeff), parts.u);
  verify_reconstruction(m, n, a);
  return Splitting(std::move(m), std::move(n), SolveStrategy::LowerTriangular);
}

Splitting gauss_seidel_splitting(const Matrix& a) {
  require_square(a, "gauss_seidel_splitting");
  DLUDecomposition parts = dlu(a);
  Matrix m = sub(parts.d, parts.l);
  verify_reconstruction(m, parts.u, a);
  return Splitting(std::move(m), parts.u, SolveStrategy::LowerTriangular);
}

Splitting full_splitting(const Matrix& a) {
  require_square(a, "full_splitting");
  Matrix n = a.is_banded() ? Matrix::banded(a.rows(), 0, 0)
                           : Matrix::dense(a.rows(), a.cols());
  return Splitting(a, std::move(n), SolveStrategy::Lu);
}

Splitting shift_splitting(const Matrix& a, const Matrix& omega) {
  require_square(a, "shift_splitting");
  Matrix m = scale(add(a, omega), 0.5);
  Matrix n = scale(sub(omega, a), 0.5);
  verify_reconstruction(m, n, a);
  return Splitting(std::move(m), std::move(n), SolveStrategy::Lu);
}

Splitting relaxed_splitting(const Matrix& a, double theta,
                            const Matrix& omega) {
  if (theta < 0.0) throw NegativeTheta("relaxed_splitting: theta < 0");
  require_square(a, "relaxed_splitting");
  Matrix m = add(scale(a, theta), omega);
  Matrix n = add(omega, scale(a, theta - 1.0));
  verify_reconstruction(m, n, a);
  return Splitting(std::move(m), std::move(n), SolveStrategy::Lu);
}

Splitting relaxed_splitting(const Splitting& inner, double theta,
                            const Matrix& omega_hat) {
  if (theta < 0.0) throw NegativeTheta("relaxed_splitting: theta < 0");
  Matrix m = add(scale(inner.m_part(), theta), omega_hat);
  Matrix n = add(add(omega_hat, scale(inner.m_part(), theta - 1.0)),
                 inner.n_part());
  verify_reconstruction(m, n, inner.split_matrix());
  return Splitting(std::move(m), std::move(n), SolveStrategy::Lu);
}

Matrix omega_twice_diag(const Matrix& a) {
  return scale(Matrix::diagonal(diag_of(a)), 2.0);
}

Matrix omega_half_diag(const Matrix& a) {
  return scale(Matrix::diagonal(diag_of(a)), 0.5);
}

}  // namespace gave
