#pragma once

#include <stdexcept>
#include <string>

namespace tsallis_ea {

// Raised when a caller violates an operation's precondition (bad sizes,
// out-of-range parameters, unknown names). The CLI maps it to exit status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// File-system failures while writing experiment outputs.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) {
    throw UsageError(message);
  }
}

}  // namespace detail
}  // namespace tsallis_ea
