#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace icisres {

// Base of every error raised by the library. Mathematical failures (a cap
// that is too small, a sequence that is not regular) and input errors share
// this root so callers can catch them uniformly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VariableCountMismatch : public Error {
 public:
  VariableCountMismatch(std::size_t a, std::size_t b)
      : Error("variable count mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonSquareMatrix : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(unsigned cap)
      : Error("truncation cap exceeded (max " + std::to_string(cap) + ")"), cap_(cap) {}
  unsigned cap() const { return cap_; }

 private:
  unsigned cap_;
};

class NotMember : public Error {
 public:
  using Error::Error;
};

class PowerCapExceeded : public Error {
 public:
  using Error::Error;
};

class NotZeroDimensional : public Error {
 public:
  using Error::Error;
};

class NotRegularSequence : public Error {
 public:
  using Error::Error;
};

class NotIsolated : public Error {
 public:
  using Error::Error;
};

class GoodCoordsNotFound : public Error {
 public:
  using Error::Error;
};

class InvalidProblem : public Error {
 public:
  using Error::Error;
};

// Input-language errors carry the 1-based line and column of the offending
// token.
class ParseError : public Error {
 public:
  ParseError(const std::string& kind, const std::string& what, std::size_t line, std::size_t column)
      : Error(kind + " at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SyntaxError : public ParseError {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : ParseError("syntax error", what, line, column) {}
};

class ArityError : public ParseError {
 public:
  ArityError(const std::string& what, std::size_t line, std::size_t column)
      : ParseError("arity error", what, line, column) {}
};

class NonRationalCoefficient : public ParseError {
 public:
  NonRationalCoefficient(const std::string& what, std::size_t line, std::size_t column)
      : ParseError("non-rational coefficient", what, line, column) {}
};

}  // namespace icisres
