#ifndef CORRSET_ERRORS_HPP
#define CORRSET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace corrset {

// Invalid measure data, malformed cylinders, precondition violations.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Configured limits exhausted: word-length budget, precision budget,
// schedule depth, numeric-width guard.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Postcondition that should hold by construction failed; a bug, never
// silently accepted.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace corrset

#endif
