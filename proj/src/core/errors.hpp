#pragma once

#include <stdexcept>
#include <string>

namespace divr {

// Failure classes surfaced across the library boundary.  Every throwing
// operation documents which kinds it can raise; anything else escaping is a
// bug and maps to an internal error at the C API boundary.
enum class ErrorKind {
  domain,          // argument outside the documented domain (zero, negative, ...)
  capacity,        // configured growth cap exceeded (word size, factoring range)
  bound,           // value does not fit the 64-bit scanning domain
  precondition,    // caller violated an operation precondition
  counterexample,  // a verified identity failed to hold (should never happen)
  internal,        // broken internal invariant
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace divr
