#include "choreo/common/error.hpp"

namespace choreo {

std::string_view errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return "invalid_params";
    case ErrorCode::NotFound:
      return "not_found";
    case ErrorCode::IncompatibleFormat:
      return "incompatible_format";
    case ErrorCode::NumericalFailure:
      return "numerical_failure";
    case ErrorCode::Io:
      return "io_error";
  }
  return "internal";
}

} // namespace choreo
