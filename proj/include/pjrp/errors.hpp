#pragma once

#include <stdexcept>
#include <string>

namespace pjrp {

// Malformed input or a violated precondition (CLI exit code 2).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured resource cap (subset, hyperperiod, search) would be exceeded (CLI exit code 3).
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pjrp
