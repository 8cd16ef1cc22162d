#pragma once

#include <stdexcept>
#include <string>

namespace wect {

// Violated precondition or incompatible operands. CLI maps this to exit code 1.
class contract_error : public std::runtime_error {
 public:
  explicit contract_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed external input (file contents, headers). CLI maps this to exit code 2.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wect
