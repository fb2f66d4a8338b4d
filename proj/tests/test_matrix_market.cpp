#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "gave/matrix_market.hpp"
#include "gave/rng.hpp"

using namespace gave;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("gave-mm-" + std::to_string(SplitMix64(std::random_device{}()).next()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("dense matrix round trip is bit exact") {
  TempDir dir;
  Matrix m = Matrix::dense(3, 2);
  m.set(0, 0, 0.1);  // not representable exactly; must survive unchanged
  m.set(0, 1, -1.0 / 3.0);
  m.set(1, 0, std::nextafter(1.0, 2.0));
  m.set(1, 1, 1e-17);
  m.set(2, 0, -123456789.123456789);
  m.set(2, 1, 0.0);
  write_matrix(dir.path / "m.mtx", m);
  Matrix back = read_matrix(dir.path / "m.mtx");
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 2);
  CHECK_FALSE(back.is_banded());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(back.at(i, j) == m.at(i, j));
}

TEST_CASE("banded matrix round trip preserves storage and bandwidths") {
  TempDir dir;
  Matrix m = Matrix::banded(5, 1, 2);
  SplitMix64 rng(3);
  for (std::size_t i = 0; i < 5; ++i) {
    std::size_t j0 = i > 1 ? i - 1 : 0;
    for (std::size_t j = j0; j <= std::min<std::size_t>(4, i + 2); ++j)
      m.set(i, j, rng.uniform(-1.0, 1.0));
  }
  write_matrix(dir.path / "band.mtx", m);
  Matrix back = read_matrix(dir.path / "band.mtx");
  CHECK(back.is_banded());
  CHECK(back.lower_bandwidth() == 1);
  CHECK(back.upper_bandwidth() == 2);
  CHECK(max_abs_diff(back, m) == 0.0);
}

TEST_CASE("vector round trip") {
  TempDir dir;
  Vector v = {1.0, -0.25, 3.5e300, 7e-300, 0.1};
  write_vector(dir.path / "v.mtx", v);
  Vector back = read_vector(dir.path / "v.mtx");
  REQUIRE(back.size() == v.size());
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i] == v[i]);
}

TEST_CASE("parse errors carry line and column") {
  TempDir dir;
  {
    std::ofstream out(dir.path / "bad.mtx");
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << "2 2 1\n";
    out << "1 x 3.0\n";
  }
  try {
    read_matrix(dir.path / "bad.mtx");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
  }

  {
    std::ofstream out(dir.path / "banner.mtx");
    out << "not a banner\n";
  }
  CHECK_THROWS_AS(read_matrix(dir.path / "banner.mtx"), ParseError);

  {
    std::ofstream out(dir.path / "short.mtx");
    out << "%%MatrixMarket matrix array real general\n";
    out << "3 1\n";
    out << "1.0\n";
  }
  CHECK_THROWS_AS(read_vector(dir.path / "short.mtx"), ParseError);
}

TEST_CASE("coordinate files without a band comment load as dense") {
  TempDir dir;
  {
    std::ofstream out(dir.path / "coord.mtx");
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << "2 3 2\n";
    out << "1 1 4.0\n";
    out << "2 3 -1.5\n";
  }
  Matrix m = read_matrix(dir.path / "coord.mtx");
  CHECK_FALSE(m.is_banded());
  CHECK(m.at(0, 0) == 4.0);
  CHECK(m.at(1, 2) == -1.5);
  CHECK(m.at(1, 1) == 0.0);
}
