#pragma once

#include <cstddef>
#include <vector>

#include "gave/matrix.hpp"

namespace gave {

// Exact reference solver for A x - B |x| = c by sign-pattern
// enumeration: for each s in {+1,-1}^n solve (A - B diag(s)) x = c and
// keep x when sign(x) is consistent with s. Entries within 1e-12 of zero
// are accepted under either sign; solutions closer than 1e-9 to an
// already-found one are deduplicated. Results are ordered by the first
// accepting pattern.
std::vector<Vector> enumerate_solutions(const Matrix& a, const Matrix& b_mat,
                                        const Vector& c,
                                        std::size_t n_max = 16);

// True when ||A x - B |x| - c|| <= tol * max(1, ||c||).
bool verify_solution(const Matrix& a, const Matrix& b_mat, const Vector& c,
                     const Vector& x, double tol = 1e-8);

}  // namespace gave
