#include "aspe/error.hpp"

namespace aspe {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonSquare: return "NonSquare";
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kRedundantVector: return "RedundantVector";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kKeygenExhausted: return "KeygenExhausted";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIntegrityError: return "IntegrityError";
    case ErrorCode::kTooFewCiphertexts: return "TooFewCiphertexts";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace aspe
