#ifndef TFG_ERRORS_HPP
#define TFG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tfg {

/// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed certificate failed its own verification.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (system config, clopen expression, element file, ...).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent computations disagreed; always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tfg

#endif  // TFG_ERRORS_HPP
