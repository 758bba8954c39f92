#pragma once

#include <stdexcept>
#include <string>

namespace coset {

// Grassmannian (or similar) enumeration would exceed the configured cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::string msg, std::string required_count)
      : std::runtime_error(std::move(msg)), required(std::move(required_count)) {}
  std::string required;
};

// A structural invariant that the construction guarantees was found broken.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data (files, strategy descriptions, dimension mismatches).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg, std::string where = "")
      : std::runtime_error(where.empty() ? msg : msg + " (at " + where + ")"),
        location(std::move(where)) {}
  std::string location;  // JSON-pointer-like path for file errors
};

}  // namespace coset
