#pragma once

#include <stdexcept>
#include <string>

namespace hmrc {

enum class ErrorCode {
    NonPrimeCharacteristic,
    ReduciblePolynomial,
    DegreeDivisibilityViolation,
    InvalidFieldSpec,
    FieldTooLarge,
    DivisionByZero,
    FieldTooSmall,
    NoSuitableSubgroup,
    LevelOrderViolation,
    NonSquare,
    Singular,
    Inconsistent,
    CoincidentNodes,
    InvalidPowerBase,
    DivisibilityViolation,
    ParameterRange,
    ShapeMismatch,
    ZeroDimensionalCode,
    UnrecoverablePattern,
    InconsistentReceived,
    ParameterSelectionFailure,
    SingularLocalBlock,
    SingularGammaBlock,
    NotVerifiedInput,
    UnsupportedCase,
    VerificationFailed,
    LengthOverflow,
    ExtensionCapExceeded,
    ParseError,
    MethodUnavailable,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace hmrc
