#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gave/oracle.hpp"
#include "gave/problems.hpp"
#include "gave/rng.hpp"

using namespace gave;

TEST_CASE("with B = 0 the oracle returns exactly the linear solution") {
  Matrix a = Matrix::from_rows({{2.0, 1.0}, {0.0, 3.0}});
  Matrix b = Matrix::dense(2, 2);
  Vector c = {5.0, 6.0};  // solution (1.5, 2)
  auto sols = enumerate_solutions(a, b, c);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0][0] == doctest::Approx(1.5));
  CHECK(sols[0][1] == doctest::Approx(2.0));
}

TEST_CASE("constructed 2x2 instance has its designed unique solution") {
  Matrix a = scale(Matrix::identity(2), 3.0);
  Matrix b = Matrix::from_rows({{-2.0, 1.0}, {1.0, 2.0}});
  Vector x_star = {1.0, -1.0};
  Vector c = vec_sub(mat_vec(a, x_star), mat_vec(b, abs_vector(x_star)));
  CHECK(c[0] == doctest::Approx(4.0));
  CHECK(c[1] == doctest::Approx(-6.0));
  auto sols = enumerate_solutions(a, b, c);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0][0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sols[0][1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("scalar case by exhaustive branch enumeration") {
  Matrix a = Matrix::from_rows({{1.0}});
  Matrix b = Matrix::from_rows({{2.0}});

  // x - 2|x| = 1: branch x >= 0 gives -x = 1 (inconsistent), branch
  // x < 0 gives 3x = 1 (inconsistent); no solution exists.
  CHECK(enumerate_solutions(a, b, {1.0}).empty());

  // x - 2|x| = -1: both branches are consistent, giving 1 and -1/3.
  auto sols = enumerate_solutions(a, b, {-1.0});
  REQUIRE(sols.size() == 2);
  std::vector<double> values = {sols[0][0], sols[1][0]};
  std::sort(values.begin(), values.end());
  CHECK(values[0] == doctest::Approx(-1.0 / 3.0));
  CHECK(values[1] == doctest::Approx(1.0));
}

TEST_CASE("verify_solution accepts the construction and rejects zero") {
  GaveProblem p = example_4_1(9, 9);
  CHECK(verify_solution(p.a, p.b, p.c, *p.x_star));
  CHECK_FALSE(verify_solution(p.a, p.b, p.c, Vector(p.size(), 0.0)));
  CHECK_THROWS_AS(verify_solution(p.a, p.b, p.c, {1.0}), DimensionMismatch);
}

TEST_CASE("size guard") {
  Matrix a = Matrix::identity(5);
  CHECK_THROWS_AS(enumerate_solutions(a, a, Vector(5, 1.0), 4), TooLarge);
}

TEST_CASE("every enumerated solution satisfies the equation") {
  SplitMix64 rng(71);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 1 + rng.below(6);
    // unconstrained instances so multi-solution cases appear
    Matrix a = Matrix::dense(n, n);
    Matrix b = Matrix::dense(n, n);
    Vector c(n);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = rng.uniform(-2.0, 2.0);
      for (std::size_t j = 0; j < n; ++j) {
        a.set(i, j, (i == j ? 2.0 : 0.0) + rng.uniform(-1.0, 1.0));
        b.set(i, j, rng.uniform(-1.0, 1.0));
      }
    }
    for (const Vector& x : enumerate_solutions(a, b, c))
      CHECK(verify_solution(a, b, c, x, 1e-10));
  }
}

TEST_CASE("solution set is invariant under symmetric permutation") {
  SplitMix64 rng(73);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 2 + rng.below(5);
    GaveProblem p = random_problem(n, 1000 + t);

    // random permutation
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i-- > 1;)
      std::swap(perm[i], perm[rng.below(i + 1)]);

    Matrix pa = Matrix::dense(n, n);
    Matrix pb = Matrix::dense(n, n);
    Vector pc(n);
    for (std::size_t i = 0; i < n; ++i) {
      pc[i] = p.c[perm[i]];
      for (std::size_t j = 0; j < n; ++j) {
        pa.set(i, j, p.a.at(perm[i], perm[j]));
        pb.set(i, j, p.b.at(perm[i], perm[j]));
      }
    }

    auto original = enumerate_solutions(p.a, p.b, p.c);
    auto permuted = enumerate_solutions(pa, pb, pc);
    REQUIRE(original.size() == permuted.size());
    // each permuted solution must match one original under relabeling
    for (const Vector& y : permuted) {
      bool matched = false;
      for (const Vector& x : original) {
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          diff = std::max(diff, std::abs(y[i] - x[perm[i]]));
        matched = matched || diff <= 1e-8;
      }
      CHECK(matched);
    }
  }
}
