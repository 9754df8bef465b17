#include "shimura/error.hpp"

namespace shimura {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotLatinSquare: return "NotLatinSquare";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotRational: return "NotRational";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::LiftFailed: return "LiftFailed";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::GenusTooSmall: return "GenusTooSmall";
    case ErrorCode::NegativeMultiplicity: return "NegativeMultiplicity";
    case ErrorCode::MismatchWithNCW: return "MismatchWithNCW";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::IncompatibleSignature: return "IncompatibleSignature";
    case ErrorCode::InvalidSSG: return "InvalidSSG";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MissingRow: return "MissingRow";
    case ErrorCode::ExtraRow: return "ExtraRow";
    case ErrorCode::ValueMismatch: return "ValueMismatch";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace shimura
