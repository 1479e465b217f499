#pragma once

#include <stdexcept>
#include <string>

namespace psy {

/// Malformed or out-of-contract input (bad index, size mismatch, non-group table, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text-format error carrying the 1-based line number it was detected on.
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A move was requested at a site that does not carry the move's local pattern.
class PatternMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace psy
