#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <vector>

#include "gave/errors.hpp"

namespace gave {

using Vector = std::vector<double>;

// Real matrix with either dense row-major storage or banded storage.
//
// Banded storage keeps a square matrix as n rows of (kl + ku + 1) values;
// entry (i, j) lives at band offset j - i + kl and reads as zero outside
// the band. Copies share storage; mutation detaches a shared copy first,
// so constructed matrices can be treated as immutable values and shared
// across threads.
class Matrix {
 public:
  enum class Storage { Dense, Banded };

  Matrix() : Matrix(dense(0, 0)) {}

  static Matrix dense(std::size_t rows, std::size_t cols);
  static Matrix banded(std::size_t n, std::size_t lower_bw,
                       std::size_t upper_bw);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& d);
  static Matrix zero_like(const Matrix& m);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return data_->rows; }
  std::size_t cols() const { return data_->cols; }
  bool is_square() const { return rows() == cols(); }
  Storage storage() const { return data_->storage; }
  bool is_banded() const { return data_->storage == Storage::Banded; }

  // Bandwidths; a dense matrix reports the full triangle sizes.
  std::size_t lower_bandwidth() const;
  std::size_t upper_bandwidth() const;

  double at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, double value);
  void add_at(std::size_t i, std::size_t j, double value);

  Matrix to_dense() const;
  // Re-tags as banded storage; throws if any entry outside the band is nonzero.
  Matrix to_banded(std::size_t lower_bw, std::size_t upper_bw) const;
  Matrix transposed() const;

  const std::vector<double>& raw_values() const { return data_->values; }

 private:
  struct Data {
    Storage storage = Storage::Dense;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t kl = 0;
    std::size_t ku = 0;
    std::vector<double> values;
  };

  explicit Matrix(std::shared_ptr<Data> d) : data_(std::move(d)) {}

  Data& mut();

  std::shared_ptr<Data> data_;

  friend Vector mat_vec(const Matrix&, const Vector&);
  friend Vector mat_vec_transposed(const Matrix&, const Vector&);
};

// ---- matrix operations -----------------------------------------------------

Vector mat_vec(const Matrix& m, const Vector& x);
Vector mat_vec_transposed(const Matrix& m, const Vector& x);

Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix abs_entries(const Matrix& a);

Vector diag_of(const Matrix& a);
double max_abs(const Matrix& a);
// max_ij |a_ij - b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);
bool matrix_equal(const Matrix& a, const Matrix& b, double tol);

// ---- vector operations -----------------------------------------------------

Vector abs_vector(const Vector& x);
Vector vec_add(const Vector& a, const Vector& b);
Vector vec_sub(const Vector& a, const Vector& b);
Vector vec_scale(const Vector& a, double s);
double vec_norm2(const Vector& a);
double dot(const Vector& a, const Vector& b);
bool all_finite(const Vector& a);
void require_finite(const Vector& a, const char* what);

}  // namespace gave
