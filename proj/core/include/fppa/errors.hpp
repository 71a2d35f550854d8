#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fppa {

// Argument outside the mathematical domain of an operation (bad vertex,
// probability outside (0,1], time before birth, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid model, distribution, or experiment configuration. Raised before
// any sampling takes place.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation called on an object in the wrong state, e.g. a weighted query on
// an unweighted graph.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Not enough data for a statistical estimate.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested experiment would exceed the memory budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t estimated_bytes)
      : std::runtime_error(what), estimated_bytes_(estimated_bytes) {}
  std::size_t estimated_bytes() const noexcept { return estimated_bytes_; }

 private:
  std::size_t estimated_bytes_;
};

// Malformed input file. line() is 1-based; 0 means "whole file".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fppa
