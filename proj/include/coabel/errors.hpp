#pragma once

#include <stdexcept>
#include <string>

namespace coabel {

/// Malformed or out-of-range input: bad documents, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed (e.g. an oracle disagreed).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace coabel
