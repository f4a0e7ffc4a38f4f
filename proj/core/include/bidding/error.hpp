#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bidding {

enum class ErrorCode {
  kInvalidArgument,
  kUnsupported,
  kStateCapExceeded,
  kReconstructionFailed,
  kOutsideWinningRegion,
  kWrongPhase,
  kWrongPlayer,
  kIllegalAction,
  kNotFound,
  kParse,
};

std::string_view error_code_name(ErrorCode code);

// All library failures surface as this exception; the code lets the service
// layer map failures onto HTTP statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace bidding
