#include "bidding/error.hpp"

namespace bidding {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kStateCapExceeded: return "state_cap_exceeded";
    case ErrorCode::kReconstructionFailed: return "reconstruction_failed";
    case ErrorCode::kOutsideWinningRegion: return "outside_winning_region";
    case ErrorCode::kWrongPhase: return "wrong_phase";
    case ErrorCode::kWrongPlayer: return "wrong_player";
    case ErrorCode::kIllegalAction: return "illegal_action";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kParse: return "parse_error";
  }
  return "unknown";
}

}  // namespace bidding
