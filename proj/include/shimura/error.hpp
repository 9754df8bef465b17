#pragma once

#include <stdexcept>
#include <string>

namespace shimura {

// Every failure raised by the library carries one of these codes; the C API
// forwards them unchanged.
enum class ErrorCode : int {
  Ok = 0,
  InvalidArgument = 1,
  ParseError = 2,
  NotLatinSquare = 3,
  NotAssociative = 4,
  NoIdentity = 5,
  NoInverse = 6,
  OrderCapExceeded = 7,
  NotFound = 8,
  DivisionByZero = 9,
  NotRational = 10,
  NotIntegral = 11,
  LiftFailed = 12,
  IndexOutOfRange = 13,
  SearchBudgetExceeded = 14,
  GenusTooSmall = 15,
  NegativeMultiplicity = 16,
  MismatchWithNCW = 17,
  UnknownGroup = 18,
  IncompatibleSignature = 19,
  InvalidSSG = 20,
  IoError = 21,
  MissingRow = 22,
  ExtraRow = 23,
  ValueMismatch = 24,
  Internal = 99,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace shimura
