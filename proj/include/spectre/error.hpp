#pragma once

#include <stdexcept>
#include <string>

namespace spectre {

// Failure classes map one-to-one onto CLI exit codes.
enum class ErrorKind {
  Precondition,  // input violates a documented precondition (exit 2)
  Computation,   // an algorithm gave up: cap exceeded, search failed (exit 3)
  Usage,         // malformed command line or input file (exit 64)
  Internal,      // a self-check failed; always a bug (exit 3)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Precondition:
      return 2;
    case ErrorKind::Usage:
      return 64;
    case ErrorKind::Computation:
    case ErrorKind::Internal:
      return 3;
  }
  return 3;
}

}  // namespace spectre
