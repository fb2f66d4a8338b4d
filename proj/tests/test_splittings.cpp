#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gave/problems.hpp"
#include "gave/rng.hpp"
#include "gave/splitting.hpp"

using namespace gave;

namespace {

Matrix s2_block_4x4() {
  // leading 4x4 of the bandwidth-3 benchmark stencil with diagonal 3
  return Matrix::from_rows({{3, -1, -1, -1},
                            {-1, 3, -1, -1},
                            {-1, -1, 3, -1},
                            {-1, -1, -1, 3}});
}

}  // namespace

TEST_CASE("dlu splits into diagonal and signed triangles") {
  Matrix a = Matrix::from_rows({{2, -1}, {-3, 4}});
  DLUDecomposition p = dlu(a);
  CHECK(p.d.at(0, 0) == 2.0);
  CHECK(p.d.at(1, 1) == 4.0);
  CHECK(p.l.at(1, 0) == 3.0);
  CHECK(p.l.at(0, 1) == 0.0);
  CHECK(p.u.at(0, 1) == 1.0);
  CHECK(p.u.at(1, 0) == 0.0);
  // reconstruction d - l - u = a
  CHECK(max_abs_diff(sub(sub(p.d, p.l), p.u), a) == 0.0);

  DLUDecomposition pi = dlu(Matrix::identity(4));
  CHECK(max_abs_diff(pi.d, Matrix::identity(4)) == 0.0);
  CHECK(max_abs(pi.l) == 0.0);
  CHECK(max_abs(pi.u) == 0.0);

  DLUDecomposition ps = dlu(s2_block_4x4());
  CHECK(max_abs_diff(ps.d, scale(Matrix::identity(4), 3.0)) == 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      CHECK(ps.l.at(i, j) == 1.0);
      CHECK(ps.u.at(j, i) == 1.0);
    }
}

TEST_CASE("triangular splitting with the 3/4 lower coefficient") {
  Matrix diag4 = Matrix::diagonal({4.0, 4.0});
  Splitting s0 = gnms_paper_splitting(diag4);
  CHECK(max_abs_diff(s0.m_part(), diag4) == 0.0);
  CHECK(max_abs(s0.n_part()) == 0.0);

  Matrix a = Matrix::from_rows({{4, 0}, {-2, 4}});
  Splitting s = gnms_paper_splitting(a);
  CHECK(s.m_part().at(0, 0) == 4.0);
  CHECK(s.m_part().at(1, 0) == doctest::Approx(-1.5));
  CHECK(s.n_part().at(1, 0) == doctest::Approx(0.5));
  CHECK(max_abs_diff(sub(s.m_part(), s.n_part()), a) <= 1e-15);
  CHECK(s.strategy() == SolveStrategy::LowerTriangular);

  // leading 3x3 of the benchmark diagonal-block stencil
  Matrix s1 = Matrix::from_rows(
      {{36, -1.5, -0.5}, {-1.5, 36, -1.5}, {-0.5, -1.5, 36}});
  Splitting sp = gnms_paper_splitting(s1);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(sp.m_part().at(i, i) == 36.0);
    for (std::size_t j = i + 1; j < 3; ++j) CHECK(sp.m_part().at(i, j) == 0.0);
  }

  CHECK_THROWS_AS(gnms_paper_splitting(Matrix::from_rows({{0.0}})),
                  ZeroDiagonal);
}

TEST_CASE("shift splitting halves the sum and difference") {
  Matrix i2 = Matrix::identity(2);
  Splitting s1 = shift_splitting(scale(i2, 2.0), Matrix::banded(2, 0, 0));
  CHECK(max_abs_diff(s1.m_part(), i2) == 0.0);
  CHECK(max_abs_diff(s1.n_part(), scale(i2, -1.0)) == 0.0);

  Splitting s2 = shift_splitting(i2, i2);
  CHECK(max_abs_diff(s2.m_part(), i2) == 0.0);
  CHECK(max_abs(s2.n_part()) == 0.0);

  GaveProblem p = example_4_1(9, 9);
  Splitting s3 = shift_splitting(p.a, omega_twice_diag(p.a));
  CHECK(s3.m_part().at(0, 0) == doctest::Approx(54.3));
  // m + n recovers the shift matrix itself
  CHECK(max_abs_diff(add(s3.m_part(), s3.n_part()), omega_twice_diag(p.a)) <=
        1e-13);
}

TEST_CASE("relaxed splitting reconstructs the split matrix") {
  Matrix a = scale(Matrix::identity(2), 2.0);
  Splitting collapse = relaxed_splitting(a, 1.0, Matrix::banded(2, 0, 0));
  CHECK(max_abs_diff(collapse.m_part(), a) == 0.0);
  CHECK(max_abs(collapse.n_part()) == 0.0);

  Splitting s = relaxed_splitting(a, 0.5, Matrix::identity(2));
  CHECK(max_abs_diff(s.m_part(), scale(Matrix::identity(2), 2.0)) == 0.0);
  CHECK(max_abs(s.n_part()) == 0.0);  // omega + (theta-1) a = I - I
  CHECK(max_abs_diff(sub(s.m_part(), s.n_part()), a) == 0.0);

  // generalized form around an inner splitting at theta = 1 adds the
  // shift to both parts
  SplitMix64 rng(5);
  Matrix r = Matrix::dense(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      r.set(i, j, (i == j ? 4.0 : 0.0) + rng.uniform(-1.0, 1.0));
  Splitting inner = gnms_paper_splitting(r);
  Matrix omega_hat = omega_half_diag(r);
  Splitting outer = relaxed_splitting(inner, 1.0, omega_hat);
  CHECK(max_abs_diff(outer.m_part(), add(inner.m_part(), omega_hat)) <= 1e-14);
  CHECK(max_abs_diff(outer.n_part(), add(inner.n_part(), omega_hat)) <= 1e-14);
  CHECK(max_abs_diff(sub(outer.m_part(), outer.n_part()), r) <= 1e-14);

  CHECK_THROWS_AS(relaxed_splitting(a, -0.1, Matrix::identity(2)),
                  NegativeTheta);
}

TEST_CASE("construction fails exactly when the pivot part is singular") {
  Matrix a = Matrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
  CHECK_THROWS_AS(full_splitting(a), SingularMatrix);
  // theta = 0 with a zero shift leaves nothing to invert
  CHECK_THROWS_AS(relaxed_splitting(a, 0.0, Matrix::banded(2, 0, 0)),
                  SingularMatrix);
}

TEST_CASE("random splittings reconstruct to relative 1e-14") {
  SplitMix64 rng(31);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + rng.below(8);
    Matrix a = Matrix::dense(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a.set(i, j, (i == j ? n + 1.0 : 0.0) + rng.uniform(-1.0, 1.0));
    double s = max_abs(a);
    Splitting tri = gnms_paper_splitting(a);
    CHECK(max_abs_diff(sub(tri.m_part(), tri.n_part()), a) <= 1e-14 * s);
    Splitting gs = gauss_seidel_splitting(a);
    CHECK(max_abs_diff(sub(gs.m_part(), gs.n_part()), a) <= 1e-14 * s);
    Splitting sh = shift_splitting(a, omega_half_diag(a));
    CHECK(max_abs_diff(sub(sh.m_part(), sh.n_part()), a) <= 1e-14 * s);
    double theta = 0.25 + rng.uniform();
    Splitting rel = relaxed_splitting(a, theta, omega_twice_diag(a));
    CHECK(max_abs_diff(sub(rel.m_part(), rel.n_part()), a) <= 1e-13 * s);
  }
}
