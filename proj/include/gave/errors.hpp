#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gave {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class ZeroDiagonal : public Error {
 public:
  using Error::Error;
};

class NegativeTheta : public Error {
 public:
  using Error::Error;
};

// An iterative estimator ran out of iterations. The best estimate is
// carried by the NormEstimate value; this exception is thrown only where
// an unconverged estimate cannot be tolerated.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NonFiniteIterate : public Error {
 public:
  using Error::Error;
};

class ZeroRightHandSide : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class TooSmall : public Error {
 public:
  using Error::Error;
};

class AllDiverged : public Error {
 public:
  using Error::Error;
};

class MissingPart : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace gave
