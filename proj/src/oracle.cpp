#include "gave/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "gave/lu.hpp"
#include "gave/parallel.hpp"

namespace gave {

namespace {

constexpr double kSignSlack = 1e-12;
constexpr double kDedupDistance = 1e-9;

}  // namespace

std::vector<Vector> enumerate_solutions(const Matrix& a, const Matrix& b_mat,
                                        const Vector& c, std::size_t n_max) {
  if (!a.is_square() || a.rows() != b_mat.rows() || a.cols() != b_mat.cols() ||
      c.size() != a.rows())
    throw DimensionMismatch("enumerate_solutions: shapes disagree");
  require_finite(c, "right-hand side");
  const std::size_t n = a.rows();
  if (n > n_max)
    throw TooLarge("enumerate_solutions: n = " + std::to_string(n) +
                   " exceeds n_max = " + std::to_string(n_max));

  const std::size_t patterns = std::size_t{1} << n;
  std::vector<std::optional<Vector>> found(patterns);

  Matrix a_dense = a.to_dense();
  Matrix b_dense = b_mat.to_dense();

  parallel_for(patterns, [&](std::size_t p) {
    // bit i of p selects the sign of component i: 0 -> +1, 1 -> -1
    Matrix system = a_dense;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = (p >> i) & 1 ? -1.0 : 1.0;
      for (std::size_t r = 0; r < n; ++r)
        system.set(r, i, system.at(r, i) - b_dense.at(r, i) * s);
    }
    Vector x;
    try {
      x = LuFactors::factor(system).solve(c);
    } catch (const SingularMatrix&) {
      return;  // this branch has no unique representative; skip
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double s = (p >> i) & 1 ? -1.0 : 1.0;
      if (std::abs(x[i]) <= kSignSlack) continue;
      if (s * x[i] < 0.0) return;  // sign-inconsistent
    }
    found[p] = std::move(x);
  });

  std::vector<Vector> out;
  for (std::size_t p = 0; p < patterns; ++p) {
    if (!found[p]) continue;
    const Vector& x = *found[p];
    bool duplicate = false;
    for (const Vector& y : out)
      if (vec_norm2(vec_sub(x, y)) <= kDedupDistance) {
        duplicate = true;
        break;
      }
    if (!duplicate) out.push_back(x);
  }
  return out;
}

bool verify_solution(const Matrix& a, const Matrix& b_mat, const Vector& c,
                     const Vector& x, double tol) {
  if (x.size() != a.cols() || c.size() != a.rows())
    throw DimensionMismatch("verify_solution: shapes disagree");
  Vector r = vec_sub(vec_sub(mat_vec(a, x), mat_vec(b_mat, abs_vector(x))), c);
  return vec_norm2(r) <= tol * std::max(1.0, vec_norm2(c));
}

}  // namespace gave
