// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mathqa {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A record or argument violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition (wrong catalog kind, too few
/// operands, evaluating a non-calculable formula, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

/// Required sources or settings are missing.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mathqa
