#pragma once

#include <stdexcept>
#include <string>

namespace gpsparx {

// Invalid user-supplied data, file, or configuration. The CLI maps this to
// exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure at runtime (conditioning, checksum mismatch, degenerate
// metric). The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant, i.e. a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gpsparx
