#pragma once

#include <stdexcept>
#include <string>

namespace snapcx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates an operation's precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A configured resource cap (simplex count, cardinality) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// An internal certificate did not hold. Always an implementation bug.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace snapcx
