#pragma once

#include <stdexcept>
#include <string>

namespace crfae {

/// Errors caused by user input (bad files, inconsistent arguments). The CLI
/// maps these to exit status 2; anything else is an internal failure.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : InputError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class FormatError : public InputError {
 public:
  using InputError::InputError;
};

class MismatchError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace crfae
