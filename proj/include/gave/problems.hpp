#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "gave/matrix.hpp"

namespace gave {

// One instance of A x - B |x| = c, optionally with the solution it was
// constructed from.
struct GaveProblem {
  Matrix a;
  Matrix b;
  Vector c;
  std::optional<Vector> x_star;
  std::string label;

  std::size_t size() const { return c.size(); }
};

// Block-banded benchmark family. Both A and B consist of block_rows x
// block_rows blocks of size m x m: the diagonal blocks carry a banded
// stencil (diagonal 36 with -1.5,-0.5,-1.5 neighbors for A before the
// +1/5 shift; diagonal 3 with -1 neighbors for B), the off-diagonal
// blocks are scalar multiples of I up to block offset 4. The right-hand
// side is built from the alternating solution (1/2, 1, 1/2, 1, ...).
// block_rows = 0 selects block_rows = m.
GaveProblem example_4_1(std::size_t m, std::size_t block_rows = 0);

// Random diagonally dominant banded instance with B rescaled so that
// ||inv(A) B|| equals norm_target (< 1 keeps it Picard-certified), c
// built from a random solution. Identical bytes for identical seeds.
GaveProblem random_problem(std::size_t n, std::uint64_t seed,
                           double norm_target = 0.5);

// Problem files: a plain-text manifest (key = value per line, keys A, B,
// c, x_star, label) next to Matrix Market files for the named parts.
GaveProblem load_problem(const std::filesystem::path& manifest_path);
void save_problem(const GaveProblem& problem,
                  const std::filesystem::path& manifest_path,
                  bool include_solution = true);

}  // namespace gave
