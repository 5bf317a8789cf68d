#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jigsaw {

// Bad caller input: out-of-range ids, invalid parameters, violated
// preconditions. The CLI maps this family to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Monte Carlo estimation could not produce a result (e.g. no bracket).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jigsaw
