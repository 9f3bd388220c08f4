#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace idect {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// approx
class ResolutionFailure : public Error {
 public:
  using Error::Error;
};

/// Point outside [0,T], or a non-positive interval length.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two series living on different intervals or coefficient spaces.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

// funcparse
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected,
              const std::string& what)
      : Error(what), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownFunction : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

// ops / conv / linalg
class DegreeError : public Error {
 public:
  using Error::Error;
};

class TruncationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class MissingFlippedKernel : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  SingularSystem(std::size_t column, const std::string& what)
      : Error(what), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

// solver
class ConstraintCountMismatch : public Error {
 public:
  using Error::Error;
};

// cli
class ProblemFileError : public Error {
 public:
  ProblemFileError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace idect
