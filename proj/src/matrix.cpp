#include "gave/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gave {

namespace {

std::size_t band_width(std::size_t kl, std::size_t ku) { return kl + ku + 1; }

[[noreturn]] void dim_fail(const std::string& ctx) {
  throw DimensionMismatch("dimension mismatch in " + ctx);
}

}  // namespace

Matrix Matrix::dense(std::size_t rows, std::size_t cols) {
  auto d = std::make_shared<Data>();
  d->storage = Storage::Dense;
  d->rows = rows;
  d->cols = cols;
  d->values.assign(rows * cols, 0.0);
  return Matrix(std::move(d));
}

Matrix Matrix::banded(std::size_t n, std::size_t lower_bw,
                      std::size_t upper_bw) {
  if (n > 0) {
    lower_bw = std::min(lower_bw, n - 1);
    upper_bw = std::min(upper_bw, n - 1);
  }
  auto d = std::make_shared<Data>();
  d->storage = Storage::Banded;
  d->rows = n;
  d->cols = n;
  d->kl = lower_bw;
  d->ku = upper_bw;
  d->values.assign(n * band_width(lower_bw, upper_bw), 0.0);
  return Matrix(std::move(d));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m = banded(n, 0, 0);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m = banded(d.size(), 0, 0);
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

Matrix Matrix::zero_like(const Matrix& src) {
  if (src.is_banded())
    return banded(src.rows(), src.lower_bandwidth(), src.upper_bandwidth());
  return dense(src.rows(), src.cols());
}

Matrix Matrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m = dense(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) dim_fail("from_rows (ragged rows)");
    std::size_t j = 0;
    for (double v : row) m.set(i, j++, v);
    ++i;
  }
  return m;
}

Matrix::Data& Matrix::mut() {
  if (data_.use_count() > 1) data_ = std::make_shared<Data>(*data_);
  return *data_;
}

std::size_t Matrix::lower_bandwidth() const {
  if (is_banded()) return data_->kl;
  return rows() == 0 ? 0 : rows() - 1;
}

std::size_t Matrix::upper_bandwidth() const {
  if (is_banded()) return data_->ku;
  return cols() == 0 ? 0 : cols() - 1;
}

double Matrix::at(std::size_t i, std::size_t j) const {
  const Data& d = *data_;
  if (i >= d.rows || j >= d.cols) dim_fail("Matrix::at");
  if (d.storage == Storage::Dense) return d.values[i * d.cols + j];
  std::ptrdiff_t off = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i);
  if (off < -static_cast<std::ptrdiff_t>(d.kl) ||
      off > static_cast<std::ptrdiff_t>(d.ku))
    return 0.0;
  return d.values[i * band_width(d.kl, d.ku) + static_cast<std::size_t>(off + static_cast<std::ptrdiff_t>(d.kl))];
}

void Matrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= rows() || j >= cols()) dim_fail("Matrix::set");
  Data& d = mut();
  if (d.storage == Storage::Dense) {
    d.values[i * d.cols + j] = value;
    return;
  }
  std::ptrdiff_t off = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i);
  if (off < -static_cast<std::ptrdiff_t>(d.kl) ||
      off > static_cast<std::ptrdiff_t>(d.ku)) {
    if (value == 0.0) return;
    throw InvalidArgument("write outside band of banded matrix");
  }
  d.values[i * band_width(d.kl, d.ku) + static_cast<std::size_t>(off + static_cast<std::ptrdiff_t>(d.kl))] = value;
}

void Matrix::add_at(std::size_t i, std::size_t j, double value) {
  set(i, j, at(i, j) + value);
}

Matrix Matrix::to_dense() const {
  if (!is_banded()) return *this;
  Matrix out = dense(rows(), cols());
  const Data& d = *data_;
  const std::size_t w = band_width(d.kl, d.ku);
  for (std::size_t i = 0; i < d.rows; ++i) {
    std::size_t j0 = i > d.kl ? i - d.kl : 0;
    std::size_t j1 = std::min(d.cols - 1, i + d.ku);
    for (std::size_t j = j0; j <= j1 && d.cols > 0; ++j)
      out.set(i, j, d.values[i * w + (j - i + d.kl)]);
  }
  return out;
}

Matrix Matrix::to_banded(std::size_t lower_bw, std::size_t upper_bw) const {
  if (!is_square()) dim_fail("to_banded (matrix not square)");
  Matrix out = banded(rows(), lower_bw, upper_bw);
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) {
      double v = at(i, j);
      if (v != 0.0) out.set(i, j, v);  // throws if outside the target band
    }
  }
  return out;
}

Matrix Matrix::transposed() const {
  if (is_banded()) {
    Matrix out = banded(rows(), upper_bandwidth(), lower_bandwidth());
    for (std::size_t i = 0; i < rows(); ++i) {
      std::size_t j0 = i > lower_bandwidth() ? i - lower_bandwidth() : 0;
      std::size_t j1 = std::min(cols() - 1, i + upper_bandwidth());
      for (std::size_t j = j0; j <= j1; ++j) out.set(j, i, at(i, j));
    }
    return out;
  }
  Matrix out = dense(cols(), rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) out.set(j, i, at(i, j));
  return out;
}

Vector mat_vec(const Matrix& m, const Vector& x) {
  const Matrix::Data& d = *m.data_;
  if (x.size() != d.cols) dim_fail("mat_vec");
  Vector y(d.rows, 0.0);
  if (d.storage == Matrix::Storage::Dense) {
    for (std::size_t i = 0; i < d.rows; ++i) {
      const double* row = d.values.data() + i * d.cols;
      double s = 0.0;
      for (std::size_t j = 0; j < d.cols; ++j) s += row[j] * x[j];
      y[i] = s;
    }
    return y;
  }
  const std::size_t w = d.kl + d.ku + 1;
  for (std::size_t i = 0; i < d.rows; ++i) {
    std::size_t j0 = i > d.kl ? i - d.kl : 0;
    std::size_t j1 = std::min(d.cols - 1, i + d.ku);
    const double* row = d.values.data() + i * w + d.kl;
    double s = 0.0;
    for (std::size_t j = j0; j <= j1; ++j)
      s += row[static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i)] * x[j];
    y[i] = s;
  }
  return y;
}

Vector mat_vec_transposed(const Matrix& m, const Vector& x) {
  const Matrix::Data& d = *m.data_;
  if (x.size() != d.rows) dim_fail("mat_vec_transposed");
  Vector y(d.cols, 0.0);
  if (d.storage == Matrix::Storage::Dense) {
    for (std::size_t i = 0; i < d.rows; ++i) {
      const double* row = d.values.data() + i * d.cols;
      const double xi = x[i];
      for (std::size_t j = 0; j < d.cols; ++j) y[j] += row[j] * xi;
    }
    return y;
  }
  const std::size_t w = d.kl + d.ku + 1;
  for (std::size_t i = 0; i < d.rows; ++i) {
    std::size_t j0 = i > d.kl ? i - d.kl : 0;
    std::size_t j1 = std::min(d.cols - 1, i + d.ku);
    const double* row = d.values.data() + i * w + d.kl;
    const double xi = x[i];
    for (std::size_t j = j0; j <= j1; ++j)
      y[j] += row[static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i)] * xi;
  }
  return y;
}

namespace {

template <typename Op>
Matrix combine(const Matrix& a, const Matrix& b, Op op, const char* ctx) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) dim_fail(ctx);
  if (a.is_banded() && b.is_banded()) {
    std::size_t kl = std::max(a.lower_bandwidth(), b.lower_bandwidth());
    std::size_t ku = std::max(a.upper_bandwidth(), b.upper_bandwidth());
    Matrix out = Matrix::banded(a.rows(), kl, ku);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::size_t j0 = i > kl ? i - kl : 0;
      std::size_t j1 = std::min(a.cols() - 1, i + ku);
      for (std::size_t j = j0; j <= j1; ++j)
        out.set(i, j, op(a.at(i, j), b.at(i, j)));
    }
    return out;
  }
  Matrix out = Matrix::dense(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out.set(i, j, op(a.at(i, j), b.at(i, j)));
  return out;
}

}  // namespace

Matrix add(const Matrix& a, const Matrix& b) {
  return combine(a, b, [](double x, double y) { return x + y; }, "add");
}

Matrix sub(const Matrix& a, const Matrix& b) {
  return combine(a, b, [](double x, double y) { return x - y; }, "sub");
}

Matrix scale(const Matrix& a, double s) {
  Matrix out = a;
  if (a.is_banded()) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::size_t j0 = i > a.lower_bandwidth() ? i - a.lower_bandwidth() : 0;
      std::size_t j1 = std::min(a.cols() - 1, i + a.upper_bandwidth());
      for (std::size_t j = j0; j <= j1; ++j) out.set(i, j, a.at(i, j) * s);
    }
    return out;
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a.at(i, j) * s);
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) dim_fail("matmul");
  if (a.is_banded() && b.is_banded()) {
    std::size_t n = a.rows();
    std::size_t kl = std::min(n == 0 ? 0 : n - 1,
                              a.lower_bandwidth() + b.lower_bandwidth());
    std::size_t ku = std::min(n == 0 ? 0 : n - 1,
                              a.upper_bandwidth() + b.upper_bandwidth());
    Matrix out = Matrix::banded(n, kl, ku);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t k0 = i > a.lower_bandwidth() ? i - a.lower_bandwidth() : 0;
      std::size_t k1 = std::min(n - 1, i + a.upper_bandwidth());
      for (std::size_t j = (i > kl ? i - kl : 0); j <= std::min(n - 1, i + ku);
           ++j) {
        double s = 0.0;
        for (std::size_t k = k0; k <= k1; ++k) s += a.at(i, k) * b.at(k, j);
        if (s != 0.0) out.set(i, j, s);
      }
    }
    return out;
  }
  Matrix out = Matrix::dense(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out.add_at(i, j, aik * b.at(k, j));
    }
  return out;
}

Matrix abs_entries(const Matrix& a) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::size_t j0 = a.is_banded() && i > a.lower_bandwidth()
                         ? i - a.lower_bandwidth()
                         : 0;
    std::size_t j1 = a.is_banded() ? std::min(a.cols() - 1, i + a.upper_bandwidth())
                                   : a.cols() - 1;
    for (std::size_t j = j0; j <= j1 && a.cols() > 0; ++j)
      out.set(i, j, std::abs(a.at(i, j)));
  }
  return out;
}

Vector diag_of(const Matrix& a) {
  std::size_t n = std::min(a.rows(), a.cols());
  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a.at(i, i);
  return d;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.raw_values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) dim_fail("max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
  return m;
}

bool matrix_equal(const Matrix& a, const Matrix& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         max_abs_diff(a, b) <= tol;
}

Vector abs_vector(const Vector& x) {
  Vector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::abs(x[i]);
  return y;
}

Vector vec_add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) dim_fail("vec_add");
  Vector y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = a[i] + b[i];
  return y;
}

Vector vec_sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) dim_fail("vec_sub");
  Vector y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = a[i] - b[i];
  return y;
}

Vector vec_scale(const Vector& a, double s) {
  Vector y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = a[i] * s;
  return y;
}

double vec_norm2(const Vector& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) dim_fail("dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool all_finite(const Vector& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

void require_finite(const Vector& a, const char* what) {
  if (!all_finite(a))
    throw NonFiniteIterate(std::string("non-finite entries in ") + what);
}

}  // namespace gave
