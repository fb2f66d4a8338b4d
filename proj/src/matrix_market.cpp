#include "gave/matrix_market.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gave/errors.hpp"

namespace gave {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Banner {
  bool coordinate = false;
  std::optional<std::pair<std::size_t, std::size_t>> band;
};

class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path)
      : in_(path), path_(path.string()) {
    if (!in_) throw Error("cannot open " + path_);
  }

  // Next line verbatim (used for the banner, which starts with %%).
  bool raw(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++lineno_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  // Next non-comment, non-empty line. Band comments are captured.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++lineno_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (line[0] == '%') {
        std::istringstream c(line.substr(1));
        std::string tag;
        c >> tag;
        if (tag == "band") {
          std::size_t kl = 0, ku = 0;
          if (c >> kl >> ku) band_ = {kl, ku};
        }
        continue;
      }
      return true;
    }
    return false;
  }

  std::size_t lineno() const { return lineno_; }
  const std::optional<std::pair<std::size_t, std::size_t>>& band() const {
    return band_;
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t column) const {
    throw ParseError(path_ + ": " + msg, lineno_, column);
  }

 private:
  std::ifstream in_;
  std::string path_;
  std::size_t lineno_ = 0;
  std::optional<std::pair<std::size_t, std::size_t>> band_;
};

// Tokenizing parser that reports the column of a malformed field.
class Fields {
 public:
  Fields(const std::string& line, const LineReader& reader)
      : line_(line), reader_(reader) {}

  double number() {
    skip_ws();
    const std::size_t col = pos_ + 1;
    const char* start = line_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(start, &end);
    if (end == start) reader_.fail("expected a number", col);
    pos_ += static_cast<std::size_t>(end - start);
    return v;
  }

  std::size_t index() {
    skip_ws();
    const std::size_t col = pos_ + 1;
    std::size_t v = 0;
    bool any = false;
    while (pos_ < line_.size() && std::isdigit(line_[pos_])) {
      v = v * 10 + static_cast<std::size_t>(line_[pos_] - '0');
      ++pos_;
      any = true;
    }
    if (!any) reader_.fail("expected an index", col);
    return v;
  }

  void expect_end() {
    skip_ws();
    if (pos_ != line_.size()) reader_.fail("trailing characters", pos_ + 1);
  }

 private:
  void skip_ws() {
    while (pos_ < line_.size() && std::isspace(line_[pos_])) ++pos_;
  }

  const std::string& line_;
  const LineReader& reader_;
  std::size_t pos_ = 0;
};

Banner read_banner(LineReader& reader) {
  // The banner is the first line; read it before comment skipping.
  Banner banner;
  std::string line;
  if (!reader.raw(line)) reader.fail("empty file", 1);
  std::istringstream s(line);
  std::string head, object, format, field, symmetry;
  s >> head >> object >> format >> field >> symmetry;
  if (head != "%%MatrixMarket" || object != "matrix")
    reader.fail("missing MatrixMarket banner", 1);
  if (format == "coordinate")
    banner.coordinate = true;
  else if (format != "array")
    reader.fail("unsupported format '" + format + "'", 1);
  if (field != "real") reader.fail("unsupported field '" + field + "'", 1);
  if (symmetry != "general")
    reader.fail("unsupported symmetry '" + symmetry + "'", 1);
  return banner;
}

}  // namespace

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  if (m.is_banded()) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << "% band " << m.lower_bandwidth() << " " << m.upper_bandwidth()
        << "\n";
    std::size_t nnz = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::size_t j0 = i > m.lower_bandwidth() ? i - m.lower_bandwidth() : 0;
      std::size_t j1 = std::min(m.cols() - 1, i + m.upper_bandwidth());
      for (std::size_t j = j0; j <= j1; ++j)
        if (m.at(i, j) != 0.0) ++nnz;
    }
    out << m.rows() << " " << m.cols() << " " << nnz << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::size_t j0 = i > m.lower_bandwidth() ? i - m.lower_bandwidth() : 0;
      std::size_t j1 = std::min(m.cols() - 1, i + m.upper_bandwidth());
      for (std::size_t j = j0; j <= j1; ++j) {
        double v = m.at(i, j);
        if (v != 0.0)
          out << (i + 1) << " " << (j + 1) << " " << fmt17(v) << "\n";
      }
    }
  } else {
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << " " << m.cols() << "\n";
    // array format lists entries column by column
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i)
        out << fmt17(m.at(i, j)) << "\n";
  }
  if (!out) throw Error("write failed for " + path.string());
}

Matrix read_matrix(const std::filesystem::path& path) {
  LineReader reader(path);
  Banner banner = read_banner(reader);
  std::string line;
  if (!reader.next(line)) reader.fail("missing size line", 1);

  if (banner.coordinate) {
    Fields size(line, reader);
    std::size_t rows = size.index();
    std::size_t cols = size.index();
    std::size_t nnz = size.index();
    size.expect_end();
    banner.band = reader.band();
    Matrix m =
        banner.band
            ? Matrix::banded(rows, banner.band->first, banner.band->second)
            : Matrix::dense(rows, cols);
    if (banner.band && rows != cols)
      reader.fail("banded matrix must be square", 1);
    for (std::size_t k = 0; k < nnz; ++k) {
      if (!reader.next(line)) reader.fail("unexpected end of entries", 1);
      Fields f(line, reader);
      std::size_t i = f.index();
      std::size_t j = f.index();
      double v = f.number();
      f.expect_end();
      if (i < 1 || i > rows || j < 1 || j > cols)
        reader.fail("entry index out of range", 1);
      m.set(i - 1, j - 1, v);
    }
    return m;
  }

  Fields size(line, reader);
  std::size_t rows = size.index();
  std::size_t cols = size.index();
  size.expect_end();
  Matrix m = Matrix::dense(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) {
      if (!reader.next(line)) reader.fail("unexpected end of entries", 1);
      Fields f(line, reader);
      m.set(i, j, f.number());
      f.expect_end();
    }
  return m;
}

void write_vector(const std::filesystem::path& path, const Vector& v) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "%%MatrixMarket matrix array real general\n";
  out << v.size() << " 1\n";
  for (double x : v) out << fmt17(x) << "\n";
  if (!out) throw Error("write failed for " + path.string());
}

Vector read_vector(const std::filesystem::path& path) {
  Matrix m = read_matrix(path);
  if (m.cols() != 1)
    throw Error(path.string() + ": expected a single-column vector");
  Vector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m.at(i, 0);
  return v;
}

}  // namespace gave
