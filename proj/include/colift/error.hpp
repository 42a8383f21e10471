#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace colift {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A symbol, name or table entry that the configuration does not provide.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Data that is present but malformed: wrong shape, foreign ids, broken invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Raised when an exhaustive enumeration would exceed its guard.
class EnumerationTooLarge : public Error {
 public:
  EnumerationTooLarge(std::uint64_t cardinality, std::uint64_t guard, const std::string& what)
      : Error(what + ": " + describe(cardinality) + " values exceed the guard of " +
              std::to_string(guard) + "; reduce the instance size or raise --guard"),
        cardinality_(cardinality),
        guard_(guard) {}

  /// Saturates at UINT64_MAX.
  std::uint64_t cardinality() const noexcept { return cardinality_; }
  std::uint64_t guard() const noexcept { return guard_; }

 private:
  static std::string describe(std::uint64_t n) {
    return n == UINT64_MAX ? std::string(">= 2^64") : std::to_string(n);
  }

  std::uint64_t cardinality_;
  std::uint64_t guard_;
};

/// A functor constructor that an operation has no clause for.
class UnsupportedConstructor : public Error {
 public:
  using Error::Error;
};

/// An operation applied outside its domain, e.g. imaging a formula with atoms.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a document or formula, with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace colift
