#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace xlproj {

// Base of every error the library raises. The CLI maps each subclass onto
// its own exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or command-line usage.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input text. Carries the 1-based line number when known.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what, std::optional<std::size_t> line = std::nullopt)
      : Error(line ? "line " + std::to_string(*line) + ": " + what : what), line_(line) {}

  std::optional<std::size_t> line() const { return line_; }

 private:
  std::optional<std::size_t> line_;
};

// Well-formed input that violates a semantic constraint (bounds, overlap,
// mismatched corpora).
class DataError : public Error {
 public:
  using Error::Error;
};

// A REQUIRE_ALL matching problem with no full assignment.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// An exact solver refused an instance larger than its size guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace xlproj
