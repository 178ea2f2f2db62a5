#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphsum {

/// Malformed or inconsistent user input (partition text, graph JSON, ids).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Syntax error in partition text; `position` is a 0-based character offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A brute-force or operator evaluation would exceed its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace graphsum
