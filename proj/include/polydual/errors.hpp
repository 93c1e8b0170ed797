#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace polydual {

// Three failure classes. The CLI maps them to exit codes 2, 3 and 4.
enum class ErrorKind { parse, precondition, consistency };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Short machine-readable tag, e.g. "non_simplicial".
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

// Malformed input document.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::string code = "parse")
      : Error(ErrorKind::parse, std::move(code), message) {}
};

// Input is well formed but violates a hypothesis of the requested operation.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string code, const std::string& message)
      : Error(ErrorKind::precondition, std::move(code), message) {}
};

// An invariant that holds whenever the preconditions do was found broken.
// Reaching this means a bug, not bad input.
class ConsistencyError : public Error {
 public:
  ConsistencyError(std::string code, const std::string& message)
      : Error(ErrorKind::consistency, std::move(code), message) {}
};

}  // namespace polydual
