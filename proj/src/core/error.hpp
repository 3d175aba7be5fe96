#pragma once

#include <stdexcept>
#include <string>

namespace mixspec {

enum class ErrorCode {
  invalid_argument,   // bad parameter value or malformed input
  precondition,       // operation precondition not met
  nonfinite,          // NaN/Inf encountered where finite values are required
  construction,       // a constructive builder could not complete
  undefined_value,    // requested quantity does not exist at this point
  io,                 // file read/write failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace mixspec
