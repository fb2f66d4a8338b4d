#include "gave/lu.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace gave {

namespace {

// Relative pivot threshold below which a matrix is declared singular,
// scaled by the largest input magnitude.
constexpr double kPivotRel = 1e-14;

}  // namespace

double& LuFactors::f(std::size_t i, std::size_t j) {
  if (banded_) {
    const std::size_t w = kl_ + kuf_ + 1;
    return lu_[i * w + (j - i + kl_)];
  }
  return lu_[i * n_ + j];
}

double LuFactors::f(std::size_t i, std::size_t j) const {
  return const_cast<LuFactors*>(this)->f(i, j);
}

LuFactors LuFactors::factor(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("lu_factor: matrix not square");
  const std::size_t n = a.rows();
  LuFactors out;
  out.n_ = n;
  out.piv_.resize(n);
  if (n == 0) return out;

  const double threshold = kPivotRel * max_abs(a);

  if (a.is_banded()) {
    out.banded_ = true;
    out.kl_ = a.lower_bandwidth();
    out.kuf_ = std::min(n - 1, a.lower_bandwidth() + a.upper_bandwidth());
    const std::size_t w = out.kl_ + out.kuf_ + 1;
    out.lu_.assign(n * w, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j0 = i > a.lower_bandwidth() ? i - a.lower_bandwidth() : 0;
      std::size_t j1 = std::min(n - 1, i + a.upper_bandwidth());
      for (std::size_t j = j0; j <= j1; ++j) out.f(i, j) = a.at(i, j);
    }
  } else {
    out.lu_ = a.raw_values();
  }

  const std::size_t kl = out.banded_ ? out.kl_ : n - 1;
  const std::size_t kuf = out.banded_ ? out.kuf_ : n - 1;

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t rmax = std::min(n - 1, k + kl);
    std::size_t p = k;
    double best = std::abs(out.f(k, k));
    for (std::size_t r = k + 1; r <= rmax; ++r) {
      double v = std::abs(out.f(r, k));
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (best <= threshold)
      throw SingularMatrix("lu_factor: pivot below threshold at column " +
                           std::to_string(k));
    out.piv_[k] = p;
    const std::size_t jmax = std::min(n - 1, k + kuf);
    if (p != k)
      for (std::size_t j = k; j <= jmax; ++j)
        std::swap(out.f(k, j), out.f(p, j));
    const double pivot = out.f(k, k);
    for (std::size_t r = k + 1; r <= rmax; ++r) {
      const double mlt = out.f(r, k) / pivot;
      out.f(r, k) = mlt;
      if (mlt == 0.0) continue;
      for (std::size_t j = k + 1; j <= jmax; ++j)
        out.f(r, j) -= mlt * out.f(k, j);
    }
  }
  return out;
}

Vector LuFactors::solve(const Vector& b) const {
  if (b.size() != n_) throw DimensionMismatch("lu_solve: rhs length");
  Vector x = b;
  const std::size_t kl = banded_ ? kl_ : (n_ == 0 ? 0 : n_ - 1);
  const std::size_t kuf = banded_ ? kuf_ : (n_ == 0 ? 0 : n_ - 1);
  for (std::size_t k = 0; k < n_; ++k) {
    std::swap(x[k], x[piv_[k]]);
    const double xk = x[k];
    if (xk == 0.0) continue;
    const std::size_t rmax = std::min(n_ - 1, k + kl);
    for (std::size_t r = k + 1; r <= rmax; ++r) x[r] -= f(r, k) * xk;
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    const std::size_t jmax = std::min(n_ - 1, ii + kuf);
    double s = x[ii];
    for (std::size_t j = ii + 1; j <= jmax; ++j) s -= f(ii, j) * x[j];
    x[ii] = s / f(ii, ii);
  }
  return x;
}

Vector LuFactors::solve_transposed(const Vector& b) const {
  if (b.size() != n_) throw DimensionMismatch("lu_solve: rhs length");
  Vector x = b;
  const std::size_t kl = banded_ ? kl_ : (n_ == 0 ? 0 : n_ - 1);
  const std::size_t kuf = banded_ ? kuf_ : (n_ == 0 ? 0 : n_ - 1);
  // transpose(U) x = b, forward substitution along columns of U.
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t jmin = i > kuf ? i - kuf : 0;
    double s = x[i];
    for (std::size_t j = jmin; j < i; ++j) s -= f(j, i) * x[j];
    x[i] = s / f(i, i);
  }
  // Invert the forward elimination sequence (multiplier columns, then the
  // row interchange of that step) in reverse order.
  for (std::size_t k = n_; k-- > 0;) {
    const std::size_t rmax = std::min(n_ - 1, k + kl);
    double s = x[k];
    for (std::size_t r = k + 1; r <= rmax; ++r) s -= f(r, k) * x[r];
    x[k] = s;
    std::swap(x[k], x[piv_[k]]);
  }
  return x;
}

Vector triangular_solve(const Matrix& m, const Vector& b, TriShape shape) {
  if (!m.is_square()) throw DimensionMismatch("triangular_solve: not square");
  const std::size_t n = m.rows();
  if (b.size() != n) throw DimensionMismatch("triangular_solve: rhs length");
  Vector x(n);
  if (shape == TriShape::Lower) {
    const std::size_t kl = m.lower_bandwidth();
    for (std::size_t i = 0; i < n; ++i) {
      const double d = m.at(i, i);
      if (d == 0.0)
        throw ZeroDiagonal("triangular_solve: zero diagonal at " +
                           std::to_string(i));
      const std::size_t j0 = i > kl ? i - kl : 0;
      double s = b[i];
      for (std::size_t j = j0; j < i; ++j) s -= m.at(i, j) * x[j];
      x[i] = s / d;
    }
  } else {
    const std::size_t ku = m.upper_bandwidth();
    for (std::size_t ii = n; ii-- > 0;) {
      const double d = m.at(ii, ii);
      if (d == 0.0)
        throw ZeroDiagonal("triangular_solve: zero diagonal at " +
                           std::to_string(ii));
      const std::size_t j1 = std::min(n - 1, ii + ku);
      double s = b[ii];
      for (std::size_t j = ii + 1; j <= j1; ++j) s -= m.at(ii, j) * x[j];
      x[ii] = s / d;
    }
  }
  return x;
}

Vector triangular_solve_transposed(const Matrix& m, const Vector& b,
                                   TriShape shape) {
  // transpose of a lower-triangular matrix is upper-triangular with the
  // same diagonal; substitute along columns to avoid materializing it.
  if (!m.is_square()) throw DimensionMismatch("triangular_solve: not square");
  const std::size_t n = m.rows();
  if (b.size() != n) throw DimensionMismatch("triangular_solve: rhs length");
  Vector x(n);
  if (shape == TriShape::Lower) {
    const std::size_t kl = m.lower_bandwidth();
    for (std::size_t ii = n; ii-- > 0;) {
      const double d = m.at(ii, ii);
      if (d == 0.0)
        throw ZeroDiagonal("triangular_solve: zero diagonal at " +
                           std::to_string(ii));
      const std::size_t r1 = std::min(n - 1, ii + kl);
      double s = b[ii];
      for (std::size_t r = ii + 1; r <= r1; ++r) s -= m.at(r, ii) * x[r];
      x[ii] = s / d;
    }
  } else {
    const std::size_t ku = m.upper_bandwidth();
    for (std::size_t i = 0; i < n; ++i) {
      const double d = m.at(i, i);
      if (d == 0.0)
        throw ZeroDiagonal("triangular_solve: zero diagonal at " +
                           std::to_string(i));
      const std::size_t r0 = i > ku ? i - ku : 0;
      double s = b[i];
      for (std::size_t r = r0; r < i; ++r) s -= m.at(r, i) * x[r];
      x[i] = s / d;
    }
  }
  return x;
}

}  // namespace gave
