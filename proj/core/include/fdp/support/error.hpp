#pragma once

#include <stdexcept>
#include <string>

namespace fdp {

// Error taxonomy shared across the library. CLI exit codes map onto kinds:
// usage/domain -> 2, check_failed -> 1, resource -> 3.
enum class ErrorKind {
  usage,         // malformed input (bad flag value, unparsable rational)
  domain,        // precondition violation on an otherwise well-formed input
  check_failed,  // a certification step failed (certificate invalid)
  resource,      // configured cap exceeded (dimension, graph size, ladder)
  internal,      // invariant violation inside the library
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

} // namespace fdp
