#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diachrona {

/// Base of every domain failure the library reports. The CLI maps these to
/// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ingestion failure tied to a 1-based input line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace diachrona
