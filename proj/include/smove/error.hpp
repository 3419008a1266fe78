#pragma once

#include <stdexcept>
#include <string>

namespace smove {

// Malformed input: bad literals, unknown names, out-of-range indices,
// unparseable files. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called on data that violates its stated precondition
// (e.g. gauging an instance that does not verify).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace smove
