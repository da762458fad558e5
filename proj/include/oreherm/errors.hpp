#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace oreherm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  using Error::Error;
};

class ZeroOperand : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class DerivationMismatch : public Error {
 public:
  DerivationMismatch() : Error("operands carry different derivations") {}
};

/// Raised when a square matrix turns out not to have full row rank.
/// `dependent_rows` names input rows taking part in a left dependency
/// when one was found (0-based).
class RankDeficient : public Error {
 public:
  RankDeficient(const std::string& what, std::vector<std::size_t> rows = {})
      : Error(what), dependent_rows(std::move(rows)) {}
  std::vector<std::size_t> dependent_rows;
};

class NotUnimodular : public Error {
 public:
  using Error::Error;
};

class NotCleared : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + msg),
        message(msg),
        line(line),
        column(column) {}
  std::string message;
  std::size_t line;
  std::size_t column;
};

}  // namespace oreherm
