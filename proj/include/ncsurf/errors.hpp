// Exception types shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace ncsurf {

// Bad user input: malformed files, unknown names, violated preconditions.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : InputError {
  using InputError::InputError;
};

struct SignatureMismatch : InputError {
  SignatureMismatch() : InputError("signature mismatch") {}
};

// An invariant that should hold by construction was violated,
// or a step budget ran out.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail_input(const std::string& msg) { throw InputError(msg); }
[[noreturn]] inline void fail_pre(const std::string& msg) { throw PreconditionError(msg); }
[[noreturn]] inline void fail_internal(const std::string& msg) { throw InternalError(msg); }

} // namespace ncsurf
