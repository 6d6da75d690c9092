#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semilinear {

/// Argument outside the mathematical domain of an operation (k out of range,
/// divergent integral, non-differentiable point, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation called on the wrong kind of input (cartesian field passed to a
/// radial routine, expression referencing state variables where only x is
/// allowed, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Syntax or binding error in a nonlinearity expression.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error("at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Picard iterate became non-finite.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& message, int iteration)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + message),
        iteration_(iteration) {}

  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

/// Run configuration failed validation. `path()` is a JSON-pointer-like
/// location of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace semilinear
