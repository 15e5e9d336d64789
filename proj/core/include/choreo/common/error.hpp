#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace choreo {

enum class ErrorCode {
  InvalidArgument,
  NotFound,
  IncompatibleFormat,
  NumericalFailure,
  Io,
};

std::string_view errorCodeName(ErrorCode code);

/// Base exception for every failure raised by the library. The code maps
/// one-to-one onto the wire protocol's error codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept {
    return code_;
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

} // namespace choreo
