#include "gave/problems.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "gave/lu.hpp"
#include "gave/matrix_market.hpp"
#include "gave/norms.hpp"
#include "gave/oracle.hpp"
#include "gave/rng.hpp"

namespace gave {

namespace {

// Banded stencil row pattern by absolute offset, mirrored on both sides.
void fill_scalar_stencil(Matrix& block_target, std::size_t base,
                         std::size_t m, double diag,
                         const std::vector<double>& offsets) {
  for (std::size_t i = 0; i < m; ++i) {
    block_target.add_at(base + i, base + i, diag);
    for (std::size_t d = 1; d <= offsets.size(); ++d) {
      double v = offsets[d - 1];
      if (i + d < m) block_target.add_at(base + i, base + i + d, v);
      if (i >= d) block_target.add_at(base + i, base + i - d, v);
    }
  }
}

Matrix block_banded(std::size_t m, std::size_t block_rows, double diag,
                    const std::vector<double>& inner_offsets,
                    const std::vector<double>& block_coeffs) {
  const std::size_t n = m * block_rows;
  Matrix out = Matrix::banded(n, 4 * m, 4 * m);
  for (std::size_t p = 0; p < block_rows; ++p)
    fill_scalar_stencil(out, p * m, m, diag, inner_offsets);
  for (std::size_t p = 0; p < block_rows; ++p)
    for (std::size_t d = 1; d <= block_coeffs.size(); ++d) {
      double coeff = block_coeffs[d - 1];
      for (std::size_t i = 0; i < m; ++i) {
        if (p + d < block_rows)
          out.add_at(p * m + i, (p + d) * m + i, coeff);
        if (p >= d) out.add_at(p * m + i, (p - d) * m + i, coeff);
      }
    }
  return out;
}

}  // namespace

GaveProblem example_4_1(std::size_t m, std::size_t block_rows) {
  if (block_rows == 0) block_rows = m;
  if (m < 9 || block_rows < 9)
    throw TooSmall("example_4_1: m and block_rows must be at least 9");

  // off-diagonal block coefficients alternate -1.5, -0.5 with offset;
  // the diagonal blocks carry bandwidth-3 stencils of their own
  Matrix a_tilde = block_banded(m, block_rows, 36.0, {-1.5, -0.5, -1.5},
                                {-1.5, -0.5, -1.5, -0.5});
  Matrix b = block_banded(m, block_rows, 3.0, {-1.0, -1.0, -1.0},
                          {-1.0, -1.0, -1.0, -1.0});
  const std::size_t n = m * block_rows;
  Matrix a = a_tilde;
  for (std::size_t i = 0; i < n; ++i) a.add_at(i, i, 0.2);

  Vector x_star(n);
  for (std::size_t i = 0; i < n; ++i) x_star[i] = (i % 2 == 0) ? 0.5 : 1.0;
  Vector c =
      vec_sub(mat_vec(a, x_star), mat_vec(b, abs_vector(x_star)));

  GaveProblem p{std::move(a), std::move(b), std::move(c), std::move(x_star),
                "example-4.1 m=" + std::to_string(m) +
                    " block_rows=" + std::to_string(block_rows)};
  return p;
}

GaveProblem random_problem(std::size_t n, std::uint64_t seed,
                           double norm_target) {
  if (n < 1) throw TooSmall("random_problem: n must be positive");
  SplitMix64 rng(seed);

  const std::size_t bw = n == 1 ? 0 : 1 + rng.below(std::min<std::size_t>(n - 1, 3));
  Matrix a = Matrix::banded(n, bw, bw);
  for (std::size_t i = 0; i < n; ++i) {
    double rowsum = 0.0;
    std::size_t j0 = i > bw ? i - bw : 0;
    std::size_t j1 = std::min(n - 1, i + bw);
    for (std::size_t j = j0; j <= j1; ++j) {
      if (j == i) continue;
      double v = rng.uniform(-1.0, 1.0);
      a.set(i, j, v);
      rowsum += std::abs(v);
    }
    a.set(i, i, (rowsum + 1.0 + rng.uniform()) * (rng.uniform() < 0.5 ? 1.0 : -1.0));
  }

  Matrix b = Matrix::banded(n, bw, bw);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j0 = i > bw ? i - bw : 0;
    std::size_t j1 = std::min(n - 1, i + bw);
    for (std::size_t j = j0; j <= j1; ++j) b.set(i, j, rng.uniform(-1.0, 1.0));
  }
  // rescale so ||inv(A) B|| lands on the requested target
  double current =
      two_norm_of_product(LuFactors::factor(a), b, 1e-12, 20000);
  if (current > 0.0) b = scale(b, norm_target / current);

  Vector x_star(n);
  for (std::size_t i = 0; i < n; ++i) x_star[i] = rng.uniform(-2.0, 2.0);
  Vector c = vec_sub(mat_vec(a, x_star), mat_vec(b, abs_vector(x_star)));

  GaveProblem p{std::move(a), std::move(b), std::move(c), std::move(x_star),
                "random n=" + std::to_string(n) +
                    " seed=" + std::to_string(seed)};
  return p;
}

void save_problem(const GaveProblem& problem,
                  const std::filesystem::path& manifest_path,
                  bool include_solution) {
  namespace fs = std::filesystem;
  const fs::path dir = manifest_path.parent_path();
  const std::string stem = manifest_path.stem().string();
  if (!dir.empty()) fs::create_directories(dir);

  const std::string a_name = stem + ".A.mtx";
  const std::string b_name = stem + ".B.mtx";
  const std::string c_name = stem + ".c.mtx";
  const std::string x_name = stem + ".x_star.mtx";

  write_matrix(dir / a_name, problem.a);
  write_matrix(dir / b_name, problem.b);
  write_vector(dir / c_name, problem.c);
  const bool with_solution = include_solution && problem.x_star.has_value();
  if (with_solution) write_vector(dir / x_name, *problem.x_star);

  std::ofstream out(manifest_path);
  if (!out) throw Error("cannot write " + manifest_path.string());
  out << "A = " << a_name << "\n";
  out << "B = " << b_name << "\n";
  out << "c = " << c_name << "\n";
  if (with_solution) out << "x_star = " << x_name << "\n";
  if (!problem.label.empty()) out << "label = " << problem.label << "\n";
}

GaveProblem load_problem(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw Error("cannot open " + manifest_path.string());
  std::map<std::string, std::string> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(manifest_path.string() + ": expected key = value",
                       lineno, 1);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  const std::filesystem::path dir = manifest_path.parent_path();
  auto need = [&](const std::string& key) {
    auto it = entries.find(key);
    if (it == entries.end() || it->second.empty())
      throw MissingPart(manifest_path.string() + ": missing part '" + key +
                        "'");
    return dir / it->second;
  };

  GaveProblem p;
  p.a = read_matrix(need("A"));
  p.b = read_matrix(need("B"));
  p.c = read_vector(need("c"));
  if (entries.count("x_star") && !entries["x_star"].empty())
    p.x_star = read_vector(dir / entries["x_star"]);
  if (entries.count("label")) p.label = entries["label"];
  if (p.a.rows() != p.b.rows() || p.a.cols() != p.b.cols() ||
      p.c.size() != p.a.rows())
    throw DimensionMismatch(manifest_path.string() +
                            ": part dimensions disagree");
  return p;
}

}  // namespace gave
