#pragma once

#include <stdexcept>
#include <string>

namespace lindop {

enum class ErrorCode {
  div_zero = 1,       // division by a structurally zero element
  tower_mismatch,     // operands live over incompatible towers
  near_tie,           // ray comparison within tolerance of a tie
  not_supported,      // case outside the supported fragment (logs, multiplicity > 1, ...)
  parse,              // malformed expression / config input
  bad_arg,            // precondition violation on an operation argument
  internal,           // broken internal invariant; always a bug
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

} // namespace lindop
