#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tame {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed presentation or word text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::string const& what, std::size_t line, std::size_t column)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + what),
        message_(what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// The message without the location prefix.
  std::string const& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// A word used a generator index outside the engine's alphabet.
class AlphabetError : public Error {
 public:
  using Error::Error;
};

/// Subgroup membership could not be decided exactly, so cosets cannot be
/// identified with certainty.
class MembershipUnknown : public Error {
 public:
  using Error::Error;
};

/// A construction exceeded its configured resource limit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// The presentation is not of free-product form (some relator mixes the two
/// factor alphabets).
class MixedRelator : public Error {
 public:
  using Error::Error;
};

}  // namespace tame
