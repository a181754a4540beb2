#pragma once

#include <stdexcept>
#include <string>

namespace polycert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands of a binary operation live in different arithmetic modes.
class ModeMismatch : public Error {
 public:
  ModeMismatch() : Error("operands use different arithmetic modes") {}
};

/// Malformed input; `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Division by zero, negative square root, zero polynomial in the alpha core.
class DomainError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Float-mode working precision would exceed the configured ceiling.
class PrecisionCeiling : public Error {
 public:
  explicit PrecisionCeiling(long bits)
      : Error("working precision ceiling of " + std::to_string(bits) + " bits exceeded") {}
};

/// Iterative procedure hit its iteration cap without a verdict.
class IterationCap : public Error {
 public:
  explicit IterationCap(unsigned cap) : Error("iteration cap of " + std::to_string(cap) + " reached") {}
};

}  // namespace polycert
