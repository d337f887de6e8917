#include "berezin/error.hpp"

namespace berezin {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NonFiniteFunctionValue: return "NonFiniteFunctionValue";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PointOutOfDomain: return "PointOutOfDomain";
    case ErrorCode::ZeroKernel: return "ZeroKernel";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::NonConformalBlocks: return "NonConformalBlocks";
    case ErrorCode::BadFunctionPair: return "BadFunctionPair";
    case ErrorCode::NotTwoByTwo: return "NotTwoByTwo";
    case ErrorCode::ZeroAlpha: return "ZeroAlpha";
    case ErrorCode::ListLengthMismatch: return "ListLengthMismatch";
    case ErrorCode::BadPower: return "BadPower";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::UnknownBound: return "UnknownBound";
    case ErrorCode::UnknownLemma: return "UnknownLemma";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace berezin
