#pragma once

#include <cstddef>
#include <vector>

#include "gave/matrix.hpp"

namespace gave {

// LU factorization with row partial pivoting. A banded input is factored
// in band storage (the U factor widens to lower_bw + upper_bw); a dense
// input is factored in place. Row interchanges are recorded per step and
// applied to right-hand sides in the same interleaved order, so explicit
// inverses are never formed.
class LuFactors {
 public:
  static LuFactors factor(const Matrix& a);

  Vector solve(const Vector& b) const;
  // Solves transpose(A) x = b using the same factors.
  Vector solve_transposed(const Vector& b) const;

  std::size_t size() const { return n_; }

 private:
  LuFactors() = default;

  double& f(std::size_t i, std::size_t j);
  double f(std::size_t i, std::size_t j) const;

  bool banded_ = false;
  std::size_t n_ = 0;
  std::size_t kl_ = 0;   // lower bandwidth (banded only)
  std::size_t kuf_ = 0;  // upper bandwidth of U after fill-in (banded only)
  std::vector<double> lu_;
  std::vector<std::size_t> piv_;
};

enum class TriShape { Lower, Upper };

// Solves a triangular system by substitution. Throws ZeroDiagonal when a
// diagonal entry is exactly zero. Strictly-triangular structure of the
// other half is assumed, not checked.
Vector triangular_solve(const Matrix& m, const Vector& b, TriShape shape);
Vector triangular_solve_transposed(const Matrix& m, const Vector& b,
                                   TriShape shape);

}  // namespace gave
