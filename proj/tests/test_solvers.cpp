#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gave/oracle.hpp"
#include "gave/problems.hpp"
#include "gave/rng.hpp"
#include "gave/solvers.hpp"

using namespace gave;

namespace {

// random well-conditioned instance with dense storage
GaveProblem random_dense_instance(std::uint64_t seed, std::size_t n,
                                  double b_strength = 0.3) {
  SplitMix64 rng(seed);
  Matrix a = Matrix::dense(n, n);
  Matrix b = Matrix::dense(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a.set(i, j, (i == j ? n + 2.0 : 0.0) + rng.uniform(-1.0, 1.0));
      b.set(i, j, b_strength * rng.uniform(-1.0, 1.0));
    }
  Vector x_star(n);
  for (std::size_t i = 0; i < n; ++i) x_star[i] = rng.uniform(-2.0, 2.0);
  Vector c = vec_sub(mat_vec(a, x_star), mat_vec(b, abs_vector(x_star)));
  return GaveProblem{a, b, c, x_star, "dense test instance"};
}

double max_rel_diff(const Vector& u, const Vector& v) {
  REQUIRE(u.size() == v.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double scale = std::max({std::abs(u[i]), std::abs(v[i]), 1.0});
    worst = std::max(worst, std::abs(u[i] - v[i]) / scale);
  }
  return worst;
}

double max_trace_diff(const std::vector<Vector>& a,
                      const std::vector<Vector>& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, max_rel_diff(a[k], b[k]));
  return worst;
}

}  // namespace

TEST_CASE("zero B reduces every scheme to one linear solve") {
  Matrix a = Matrix::from_rows({{4.0, 1.0}, {-1.0, 5.0}});
  Matrix b = Matrix::dense(2, 2);
  Vector c = {3.0, 4.0};

  GnmsConfig cfg{full_splitting(a), identity_q_split(2), 1.0};
  SolveReport r = gnms_solve(cfg, b, c, {0.0, 0.0}, c);
  CHECK(r.termination == Termination::Converged);
  CHECK(r.iterations == 1);
  CHECK(verify_solution(a, b, c, r.x_final, 1e-12));

  SolveReport rf = fpi_solve(a, b, c, 0.7, {0.0, 0.0}, c);
  CHECK(rf.iterations == 1);
  CHECK(rf.termination == Termination::Converged);

  SolveReport rr =
      rms_solve(full_splitting(a), b, c, 0.7, {0.0, 0.0}, c);
  CHECK(rr.iterations == 1);
  CHECK(rr.termination == Termination::Converged);
}

TEST_CASE("2x2 instance converges to the oracle solution") {
  Matrix a = scale(Matrix::identity(2), 3.0);
  Matrix b = Matrix::from_rows({{-2.0, 1.0}, {1.0, 2.0}});
  Vector c = {4.0, -6.0};
  GnmsConfig cfg{full_splitting(a), identity_q_split(2), 1.0};
  SolveReport r = gnms_solve(cfg, b, c, {0.0, 0.0}, c);
  CHECK(r.termination == Termination::Converged);
  CHECK(r.x_final[0] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.x_final[1] == doctest::Approx(-1.0).epsilon(1e-7));
  auto oracle = enumerate_solutions(a, b, c);
  REQUIRE(oracle.size() == 1);
  CHECK(max_rel_diff(r.x_final, oracle[0]) <= 1e-6);
}

TEST_CASE("benchmark instance converges to its construction solution") {
  GaveProblem p = example_4_1(10, 10);
  GnmsConfig cfg{gnms_paper_splitting(p.a),
                 Splitting(scale(Matrix::identity(p.size()), 10.0),
                           scale(Matrix::identity(p.size()), 0.5),
                           SolveStrategy::Diagonal),
                 1.0};
  SolveReport r = gnms_solve(cfg, p.b, p.c);
  CHECK(r.termination == Termination::Converged);
  CHECK(max_rel_diff(r.x_final, *p.x_star) <= 1e-6);
  CHECK(residual(p.a, p.b, p.c, r.x_final) <= 1e-8);
}

TEST_CASE("report invariants") {
  GaveProblem p = random_dense_instance(5, 8);
  GnmsConfig cfg{full_splitting(p.a), identity_q_split(8), 1.0};
  SolveReport r = gnms_solve(cfg, p.b, p.c, default_x0(8), p.c);
  CHECK(r.residual_history.size() == r.iterations + 1);
  CHECK((r.termination == Termination::Converged) ==
        (r.final_residual() <= kDefaultTol));
  CHECK(r.final_residual() ==
        doctest::Approx(residual(p.a, p.b, p.c, r.x_final)).epsilon(1e-12));

  // starting at the exact solution terminates with zero iterations
  SolveReport r0 = gnms_solve(cfg, p.b, p.c, *p.x_star, p.c);
  CHECK(r0.iterations == 0);
  CHECK(r0.termination == Termination::Converged);
  CHECK(r0.residual_history.size() == 1);
}

TEST_CASE("residual quotient and its degenerate cases") {
  GaveProblem p = example_4_1(9, 9);
  CHECK(residual(p.a, p.b, p.c, *p.x_star) <= 1e-15);
  CHECK(residual(p.a, p.b, p.c, Vector(p.size(), 0.0)) ==
        doctest::Approx(1.0));

  // zero right-hand side flips the report to absolute residuals
  Matrix a = Matrix::identity(2);
  Matrix b = scale(Matrix::identity(2), 0.25);
  Vector zero_c = {0.0, 0.0};
  CHECK(residual(a, b, zero_c, {0.0, 0.0}) == 0.0);
  GnmsConfig cfg{full_splitting(a), identity_q_split(2), 1.0};
  SolveReport r = gnms_solve(cfg, b, zero_c, {0.5, -0.5}, zero_c);
  CHECK(r.residual_is_absolute);
  CHECK(r.termination == Termination::Converged);
}

TEST_CASE("divergence is detected and reported") {
  // x <- 3|x| + c expands every step
  Matrix a = Matrix::identity(2);
  Matrix b = scale(Matrix::identity(2), 3.0);
  Vector c = {1.0, 1.0};
  GnmsConfig cfg{full_splitting(a), identity_q_split(2), 1.0};
  SolveReport r = gnms_solve(cfg, b, c, {1.0, 1.0}, c);
  CHECK(r.termination == Termination::Diverged);
  CHECK(r.residual_history.size() == r.iterations + 1);
}

TEST_CASE("non-finite inputs are rejected") {
  Matrix a = Matrix::identity(2);
  Matrix b = Matrix::dense(2, 2);
  Vector c = {1.0, std::numeric_limits<double>::quiet_NaN()};
  GnmsConfig cfg{full_splitting(a), identity_q_split(2), 1.0};
  CHECK_THROWS_AS(gnms_solve(cfg, b, c, {0.0, 0.0}, c), NonFiniteIterate);
  CHECK_THROWS_AS(gnms_solve(cfg, b, {1.0, 1.0}, {0.0, 0.0}, c),
                  NonFiniteIterate);
}

TEST_CASE("tau must be positive") {
  Matrix a = Matrix::identity(2);
  GnmsConfig cfg{full_splitting(a), identity_q_split(2), 0.0};
  CHECK_THROWS_AS(gnms_solve(cfg, a, {1.0, 1.0}, {0.0, 0.0}, {0.0, 0.0}),
                  InvalidArgument);
  CHECK_THROWS_AS(
      fpi_solve(a, a, {1.0, 1.0}, -0.5, {0.0, 0.0}, {0.0, 0.0}),
      InvalidArgument);
}

TEST_CASE("both update formulations produce identical iterate sequences") {
  SolveHooks hooks{true};
  for (double tau : {0.3, 1.0, 1.7}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      GaveProblem p = random_dense_instance(100 + seed, 12);
      Splitting a_split = gnms_paper_splitting(p.a);
      Splitting q_split(scale(Matrix::identity(12), 10.0),
                        scale(Matrix::identity(12), 0.5),
                        SolveStrategy::Diagonal);
      GnmsConfig cfg{a_split, q_split, tau, 50, 0.0};  // run all 50 steps
      SolveReport direct =
          gnms_solve(cfg, p.b, p.c, default_x0(12), p.c, hooks);
      SolveReport reform =
          gnms_solve_reformulated(cfg, p.b, p.c, default_x0(12), p.c, hooks);
      CHECK(max_trace_diff(direct.x_trace, reform.x_trace) <= 1e-12);
    }
  }
}

TEST_CASE("parameter collapses chain down to the simplest method") {
  SolveHooks hooks{true};
  const std::size_t n = 20;
  const std::size_t steps = 50;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GaveProblem p = random_dense_instance(200 + seed, n);
    Matrix omega = omega_half_diag(p.a);
    Vector x0 = default_x0(n);

    // two-variable engine with the collapse parameters versus the
    // one-variable shifted iteration
    MethodPreset nms = preset_nms(p.a, gnms_paper_splitting(p.a), omega);
    SolveReport nms_direct = nms.run(p.b, p.c, x0, p.c, 0.0, steps, hooks);
    GnmsConfig collapsed = *nms.to_gnms_config();
    collapsed.tol = 0.0;
    collapsed.max_iter = steps;
    SolveReport via_engine =
        gnms_solve(collapsed, p.b, p.c, x0, p.c, hooks);
    CHECK(max_trace_diff(nms_direct.x_trace, via_engine.x_trace) <= 1e-12);

    // NMS with the trivial inner splitting is the shifted method
    MethodPreset nms_trivial = preset_nms(p.a, full_splitting(p.a), omega);
    MethodPreset mn = preset_mn(p.a, omega);
    SolveReport r1 = nms_trivial.run(p.b, p.c, x0, p.c, 0.0, steps, hooks);
    SolveReport r2 = mn.run(p.b, p.c, x0, p.c, 0.0, steps, hooks);
    CHECK(max_trace_diff(r1.x_trace, r2.x_trace) <= 1e-12);

    // shifted method with a zero shift is plain Picard
    Matrix zero = Matrix::dense(n, n);
    MethodPreset mn_zero = preset_mn(p.a, zero);
    MethodPreset picard = preset_picard(p.a);
    SolveReport r3 = mn_zero.run(p.b, p.c, x0, p.c, 0.0, steps, hooks);
    SolveReport r4 = picard.run(p.b, p.c, x0, p.c, 0.0, steps, hooks);
    CHECK(max_trace_diff(r3.x_trace, r4.x_trace) <= 1e-12);

    // and Picard through the engine matches too
    GnmsConfig picard_cfg = *picard.to_gnms_config();
    picard_cfg.tol = 0.0;
    picard_cfg.max_iter = steps;
    SolveReport r5 = gnms_solve(picard_cfg, p.b, p.c, x0, p.c, hooks);
    CHECK(max_trace_diff(r4.x_trace, r5.x_trace) <= 1e-12);
  }
}

TEST_CASE("relaxed and shifted presets collapse as advertised") {
  SolveHooks hooks{true};
  const std::size_t n = 10;
  const std::size_t steps = 30;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GaveProblem p = random_dense_instance(300 + seed, n);
    Matrix omega = omega_twice_diag(p.a);
    Vector x0 = default_x0(n);
    Splitting bar = gnms_paper_splitting(p.a);

    // theta = 1 relaxation of an inner splitting is the shifted method
    MethodPreset rnms = preset_rnms(bar, 1.0, omega);
    MethodPreset nms = preset_nms(p.a, bar, omega);
    SolveReport r1 = rnms.run(p.b, p.c, x0, p.c, 0.0, steps, hooks);
    SolveReport r2 = nms.run(p.b, p.c, x0, p.c, 0.0, steps, hooks);
    CHECK(max_trace_diff(r1.x_trace, r2.x_trace) <= 1e-12);

    // rmn equals rnms with the trivial inner splitting
    MethodPreset rmn = preset_rmn(p.a, 0.8, omega);
    MethodPreset rnms_trivial = preset_rnms(full_splitting(p.a), 0.8, omega);
    SolveReport r3 = rmn.run(p.b, p.c, x0, p.c, 0.0, steps, hooks);
    SolveReport r4 = rnms_trivial.run(p.b, p.c, x0, p.c, 0.0, steps, hooks);
    CHECK(max_trace_diff(r3.x_trace, r4.x_trace) <= 1e-12);

    // the doubled-scale shift method equals the halved splitting form
    MethodPreset ssmn = preset_ssmn(p.a, omega);
    Splitting halved = shift_splitting(p.a, omega);
    MethodPreset nms_halved =
        preset_nms(p.a, halved, Matrix::dense(n, n));
    SolveReport r5 = ssmn.run(p.b, p.c, x0, p.c, 0.0, steps, hooks);
    SolveReport r6 = nms_halved.run(p.b, p.c, x0, p.c, 0.0, steps, hooks);
    CHECK(max_trace_diff(r5.x_trace, r6.x_trace) <= 1e-12);

    // and through the engine
    GnmsConfig ssmn_cfg = *ssmn.to_gnms_config();
    ssmn_cfg.tol = 0.0;
    ssmn_cfg.max_iter = steps;
    SolveReport r7 = gnms_solve(ssmn_cfg, p.b, p.c, x0, p.c, hooks);
    CHECK(max_trace_diff(r5.x_trace, r7.x_trace) <= 1e-12);
  }
}

TEST_CASE("fpi with tau = 1 alternates solve and absolute value") {
  GaveProblem p = random_dense_instance(42, 6);
  SolveHooks hooks{true};
  SolveReport r =
      fpi_solve(p.a, p.b, p.c, 1.0, default_x0(6), p.c, 0.0, 10, hooks);
  // y always equals |x| after the first step, so from step 2 on the
  // iterates follow the plain Picard map started at x^1
  MethodPreset picard = preset_picard(p.a);
  SolveReport rp =
      picard.run(p.b, p.c, r.x_trace[1], p.c, 0.0, 9, hooks);
  for (std::size_t k = 0; k + 1 < r.x_trace.size(); ++k)
    CHECK(max_rel_diff(r.x_trace[k + 1], rp.x_trace[k]) <= 1e-13);
}

TEST_CASE("rms with tau = 1 and the trivial splitting lags Picard") {
  GaveProblem p = random_dense_instance(43, 6);
  SolveHooks hooks{true};
  SolveReport r = rms_solve(full_splitting(p.a), p.b, p.c, 1.0,
                            default_x0(6), p.c, 0.0, 10, hooks);
  MethodPreset picard = preset_picard(p.a);
  SolveReport rp = picard.run(p.b, p.c, r.x_trace[1], p.c, 0.0, 9, hooks);
  for (std::size_t k = 0; k + 1 < r.x_trace.size(); ++k)
    CHECK(max_rel_diff(r.x_trace[k + 1], rp.x_trace[k]) <= 1e-13);
}

TEST_CASE("certified instances reach the same solution from two starts") {
  SplitMix64 rng(55);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GaveProblem p = random_problem(6, 700 + seed, 0.4);
    GnmsConfig cfg{full_splitting(p.a), identity_q_split(6), 1.0};
    Vector start1(6), start2(6);
    for (std::size_t i = 0; i < 6; ++i) {
      start1[i] = rng.uniform(-3.0, 3.0);
      start2[i] = rng.uniform(-3.0, 3.0);
    }
    SolveReport r1 = gnms_solve(cfg, p.b, p.c, start1, p.c);
    SolveReport r2 = gnms_solve(cfg, p.b, p.c, start2, p.c);
    REQUIRE(r1.termination == Termination::Converged);
    REQUIRE(r2.termination == Termination::Converged);
    CHECK(vec_norm2(vec_sub(r1.x_final, r2.x_final)) <= 1e-6);
  }
}

TEST_CASE("small solves agree with the enumeration oracle") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    std::size_t n = 2 + (seed % 7);
    GaveProblem p = random_problem(n, 900 + seed, 0.5);
    auto sols = enumerate_solutions(p.a, p.b, p.c);
    REQUIRE(sols.size() == 1);
    GnmsConfig cfg{full_splitting(p.a), identity_q_split(n), 1.0};
    SolveReport r = gnms_solve(cfg, p.b, p.c);
    REQUIRE(r.termination == Termination::Converged);
    CHECK(max_rel_diff(r.x_final, sols[0]) <= 1e-6);
  }
}
